//! Normal forms for `B_pq`, `B_pq+` and `B̃_pq+`.
//!
//! All three groups are multiple HNN extensions of the vertex group
//! `ℤ² = ⟨a, b⟩` (times the central `⟨z⟩` in the tilde case):
//!
//! | letter | domain (crosses left to right) | image      | z per unit |
//! |--------|--------------------------------|------------|------------|
//! | `s`    | `(q, 0)`                       | `(p, 1)`   | 0          |
//! | `s⁻¹`  | `(p, 1)`                       | `(q, 0)`   | 0          |
//! | `t`    | `(q, 0)`                       | `(p, -1)`  | 0          |
//! | `t⁻¹`  | `(p, -1)`                      | `(q, 0)`   | 0          |
//! | `θ`    | `(0, 1)`                       | `(0, 1)`   | +1         |
//! | `θ⁻¹`  | `(0, 1)`                       | `(0, 1)`   | -1         |
//!
//! A normal form is `h_0 σ_1 h_1 ⋯ σ_k h_k · z^e` where every `h_{j-1}` lies
//! in the transversal of the domain of `σ_j` and no `σ⁻¹ 1 σ` occurs. The
//! transversals are `{(n, m) : 0 ≤ n < q}` for domain `(q, 0)` and
//! `{(n, 0)}` for the other three domains.

use std::cmp::Ordering;
use std::fmt;

use ibig::ops::DivEuclid;
use ibig::IBig;

use crate::error::{Error, Result};
use crate::words::{Generator, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `B_pq`: stable letters `s`, `t`.
    Bpq,
    /// `B_pq+`: adds `θ` commuting with `b`.
    BpqPlus,
    /// `B̃_pq+`: central extension with `[b, θ] = z`.
    TildeBpqPlus,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Bpq => "bpq",
            GroupKind::BpqPlus => "bpq+",
            GroupKind::TildeBpqPlus => "tbpq+",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupParams {
    pub p: u32,
    pub q: u32,
    pub kind: GroupKind,
}

impl GroupParams {
    pub fn new(p: u32, q: u32, kind: GroupKind) -> Result<Self> {
        if q < 1 || p <= q {
            return Err(Error::InvalidParams { p, q });
        }
        Ok(GroupParams { p, q, kind })
    }

    pub fn bpq(p: u32, q: u32) -> Result<Self> {
        Self::new(p, q, GroupKind::Bpq)
    }

    pub fn bpq_plus(p: u32, q: u32) -> Result<Self> {
        Self::new(p, q, GroupKind::BpqPlus)
    }

    pub fn tilde(p: u32, q: u32) -> Result<Self> {
        Self::new(p, q, GroupKind::TildeBpqPlus)
    }

    pub fn with_kind(self, kind: GroupKind) -> Self {
        GroupParams { kind, ..self }
    }

    pub fn has_theta(&self) -> bool {
        self.kind != GroupKind::Bpq
    }

    pub fn track_z(&self) -> bool {
        self.kind == GroupKind::TildeBpqPlus
    }

    /// `log₂(2p/q)`.
    pub fn alpha(&self) -> f64 {
        (2.0 * self.p as f64 / self.q as f64).log2()
    }

    pub fn enables(&self, g: Generator) -> bool {
        match g {
            Generator::A | Generator::B | Generator::S | Generator::T => true,
            Generator::Theta => self.has_theta(),
            Generator::Z => self.track_z(),
        }
    }

    /// Enabled generators in the fixed order `a b s t h z`.
    pub fn generators(&self) -> Vec<Generator> {
        Generator::ALL
            .iter()
            .copied()
            .filter(|&g| self.enables(g))
            .collect()
    }

    fn describe(&self) -> String {
        format!("{}(p={}, q={})", self.kind.name(), self.p, self.q)
    }
}

/// The element `a^a b^b` of the vertex group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TPoint {
    pub a: IBig,
    pub b: IBig,
}

impl TPoint {
    pub fn new(a: impl Into<IBig>, b: impl Into<IBig>) -> Self {
        TPoint {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        TPoint::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a == IBig::from(0u8) && self.b == IBig::from(0u8)
    }

    pub fn add(&self, o: &TPoint) -> TPoint {
        TPoint {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &TPoint) -> TPoint {
        TPoint {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn neg(&self) -> TPoint {
        TPoint {
            a: -&self.a,
            b: -&self.b,
        }
    }

    pub fn scale(&self, k: &IBig) -> TPoint {
        TPoint {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// `self.a * o.b - self.b * o.a`.
    pub fn cross(&self, o: &TPoint) -> IBig {
        &self.a * &o.b - &self.b * &o.a
    }

    /// `|a| + |b|`, the word length in `ℤ²` for the basis `a, b`.
    pub fn l1(&self) -> IBig {
        use ibig::ops::Abs;
        (&self.a).abs() + (&self.b).abs()
    }

    /// The literal word `a^a b^b`. Panics on coordinates beyond `i64`.
    pub fn literal_word(&self) -> Word {
        let a = i64::try_from(&self.a).expect("coordinate fits i64");
        let b = i64::try_from(&self.b).expect("coordinate fits i64");
        Word::power_of(Generator::A, a).concat(&Word::power_of(Generator::B, b))
    }
}

impl fmt::Display for TPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StableGen {
    S,
    T,
    Theta,
}

impl StableGen {
    pub fn generator(self) -> Generator {
        match self {
            StableGen::S => Generator::S,
            StableGen::T => Generator::T,
            StableGen::Theta => Generator::Theta,
        }
    }
}

/// A stable letter with its sign. Orders as `s < s⁻¹ < t < t⁻¹ < θ < θ⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableLetter {
    pub gen: StableGen,
    pub inverse: bool,
}

impl StableLetter {
    pub const fn new(gen: StableGen, inverse: bool) -> Self {
        StableLetter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        StableLetter::new(self.gen, !self.inverse)
    }

    pub fn letter(self) -> Letter {
        Letter::new(self.gen.generator(), self.inverse)
    }

    pub fn from_letter(l: Letter) -> Option<Self> {
        let gen = match l.generator {
            Generator::S => StableGen::S,
            Generator::T => StableGen::T,
            Generator::Theta => StableGen::Theta,
            _ => return None,
        };
        Some(StableLetter::new(gen, l.inverse))
    }

    fn tag(self) -> u8 {
        let base = match self.gen {
            StableGen::S => 1,
            StableGen::T => 3,
            StableGen::Theta => 5,
        };
        base + self.inverse as u8
    }

    /// Generator of the subgroup that crosses this letter from the left.
    pub fn domain(self, p: u32, q: u32) -> TPoint {
        match (self.gen, self.inverse) {
            (StableGen::S, false) | (StableGen::T, false) => TPoint::new(q, 0),
            (StableGen::S, true) => TPoint::new(p, 1),
            (StableGen::T, true) => TPoint::new(p, -1),
            (StableGen::Theta, _) => TPoint::new(0, 1),
        }
    }

    /// Where the domain generator lands: `σ⁻¹ · domain · σ = image`.
    pub fn image(self, p: u32, q: u32) -> TPoint {
        self.inv().domain(p, q)
    }

    /// z-exponent produced per unit of domain crossing (tilde group only).
    fn z_per_unit(self) -> i8 {
        match (self.gen, self.inverse) {
            (StableGen::Theta, false) => 1,
            (StableGen::Theta, true) => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for StableLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Splits `h = r + k·domain(x)` with `r` in the transversal before `x`.
pub fn decompose(h: &TPoint, x: StableLetter, p: u32, q: u32) -> (TPoint, IBig) {
    let zero = IBig::from(0u8);
    match (x.gen, x.inverse) {
        (StableGen::S, false) | (StableGen::T, false) => {
            let qb = IBig::from(q);
            let k = (&h.a).div_euclid(&qb);
            let r = TPoint {
                a: &h.a - &qb * &k,
                b: h.b.clone(),
            };
            (r, k)
        }
        (StableGen::S, true) => {
            let r = TPoint {
                a: &h.a - IBig::from(p) * &h.b,
                b: zero,
            };
            (r, h.b.clone())
        }
        (StableGen::T, true) => {
            let r = TPoint {
                a: &h.a + IBig::from(p) * &h.b,
                b: zero,
            };
            (r, -&h.b)
        }
        (StableGen::Theta, _) => (
            TPoint {
                a: h.a.clone(),
                b: zero,
            },
            h.b.clone(),
        ),
    }
}

/// Unique normal form of a group element.
///
/// `prefix[j] = (h_j, σ_{j+1})`, `tail = h_k`, `z` is the central exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalElement {
    params: GroupParams,
    prefix: Vec<(TPoint, StableLetter)>,
    tail: TPoint,
    z: IBig,
}

impl CanonicalElement {
    pub fn identity(params: GroupParams) -> Self {
        CanonicalElement {
            params,
            prefix: Vec::new(),
            tail: TPoint::zero(),
            z: IBig::from(0u8),
        }
    }

    pub fn vertex(params: GroupParams, point: TPoint) -> Self {
        let mut e = Self::identity(params);
        e.tail = point;
        e
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn prefix(&self) -> &[(TPoint, StableLetter)] {
        &self.prefix
    }

    pub fn tail(&self) -> &TPoint {
        &self.tail
    }

    pub fn z_exp(&self) -> &IBig {
        &self.z
    }

    /// Number of stable letters.
    pub fn stable_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = StableLetter> + '_ {
        self.prefix.iter().map(|(_, l)| *l)
    }

    /// `h_0, …, h_k`.
    pub fn syllables(&self) -> impl Iterator<Item = &TPoint> + '_ {
        self.prefix.iter().map(|(h, _)| h).chain(std::iter::once(&self.tail))
    }

    pub fn is_identity(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_zero() && self.z == IBig::from(0u8)
    }

    /// Right-multiplies by the vertex element `(da, db)`.
    pub fn push_vertex(&mut self, pt: &TPoint) {
        self.tail.a += &pt.a;
        self.tail.b += &pt.b;
    }

    fn push_small(&mut self, da: i64, db: i64) {
        if da != 0 {
            self.tail.a += IBig::from(da);
        }
        if db != 0 {
            self.tail.b += IBig::from(db);
        }
    }

    pub fn push_z(&mut self, e: &IBig) {
        if self.params.track_z() {
            self.z += e;
        }
    }

    /// Right-multiplies by a stable letter, cancelling a pinch if one forms.
    pub fn push_letter(&mut self, x: StableLetter) {
        let (p, q) = (self.params.p, self.params.q);
        let (r, k) = decompose(&self.tail, x, p, q);
        let crossed = x.image(p, q).scale(&k);
        if self.params.track_z() {
            match x.z_per_unit() {
                1 => self.z += &k,
                -1 => self.z -= &k,
                _ => {}
            }
        }
        let pinch = r.is_zero() && self.prefix.last().is_some_and(|(_, l)| *l == x.inv());
        if pinch {
            let (h_prev, _) = self.prefix.pop().expect("checked nonempty");
            self.tail = h_prev.add(&crossed);
        } else {
            self.prefix.push((r, x));
            self.tail = crossed;
        }
    }

    /// Right-multiplies by one letter of a word.
    pub fn push_word_letter(&mut self, l: Letter) -> Result<()> {
        match l.generator {
            Generator::A => self.push_small(l.sign(), 0),
            Generator::B => self.push_small(0, l.sign()),
            Generator::Z => {
                if !self.params.track_z() {
                    return Err(Error::DisabledLetter(Generator::Z, self.params.describe()));
                }
                self.z += IBig::from(l.sign());
            }
            g => {
                if !self.params.enables(g) {
                    return Err(Error::DisabledLetter(g, self.params.describe()));
                }
                self.push_letter(StableLetter::from_letter(l).expect("stable generator"));
            }
        }
        Ok(())
    }

    /// Right-multiplies by every letter of `w`.
    pub fn push_word(&mut self, w: &Word) -> Result<()> {
        let mut da: i64 = 0;
        let mut db: i64 = 0;
        for &l in w.letters() {
            match l.generator {
                Generator::A => da += l.sign(),
                Generator::B => db += l.sign(),
                _ => {
                    self.push_small(da, db);
                    da = 0;
                    db = 0;
                    self.push_word_letter(l)?;
                }
            }
        }
        self.push_small(da, db);
        Ok(())
    }

    pub fn multiply(&self, other: &CanonicalElement) -> Result<CanonicalElement> {
        if self.params != other.params {
            return Err(Error::MismatchedGroups);
        }
        let mut out = self.clone();
        for (h, l) in &other.prefix {
            out.push_vertex(h);
            out.push_letter(*l);
        }
        out.push_vertex(&other.tail);
        out.z += &other.z;
        Ok(out)
    }

    pub fn invert(&self) -> CanonicalElement {
        let mut out = CanonicalElement::identity(self.params);
        out.z = -&self.z;
        out.push_vertex(&self.tail.neg());
        for (h, l) in self.prefix.iter().rev() {
            out.push_letter(l.inv());
            out.push_vertex(&h.neg());
        }
        out
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &CanonicalElement) -> Result<CanonicalElement> {
        c.invert().multiply(self)?.multiply(c)
    }

    /// The vertex element, when there are no stable letters and no z.
    pub fn t_eval(&self) -> Option<TPoint> {
        if self.prefix.is_empty() && self.z == IBig::from(0u8) {
            Some(self.tail.clone())
        } else {
            None
        }
    }

    /// The `𝕋 × ⟨z⟩` value when there are no stable letters.
    pub fn vertex_part(&self) -> Option<(&TPoint, &IBig)> {
        self.prefix.is_empty().then_some((&self.tail, &self.z))
    }

    /// The normal form as a word, syllables written literally.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for (h, l) in &self.prefix {
            letters.extend(h.literal_word().into_letters());
            letters.push(l.letter());
        }
        letters.extend(self.tail.literal_word().into_letters());
        let z = i64::try_from(&self.z).expect("z exponent fits i64");
        letters.extend(Word::power_of(Generator::Z, z).into_letters());
        Word::from_letters(letters)
    }

    /// Byte key: unique per element of a fixed group.
    pub fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 8 * self.prefix.len());
        out.extend_from_slice(&(self.prefix.len() as u32).to_le_bytes());
        for (h, l) in &self.prefix {
            encode_point(&mut out, h);
            out.push(l.tag());
        }
        encode_point(&mut out, &self.tail);
        encode_int(&mut out, &self.z);
        out
    }

    /// Total order: stable-letter sequence first, then syllable tuples, then z.
    pub fn canonical_cmp(&self, other: &CanonicalElement) -> Ordering {
        self.letters()
            .cmp(other.letters())
            .then_with(|| self.syllables().cmp(other.syllables()))
            .then_with(|| self.z.cmp(&other.z))
    }

    /// Replaces the element with the same normal form in another group kind
    /// with identical `(p, q)`. Fails when a letter is not available there.
    pub fn reinterpret(&self, kind: GroupKind) -> Result<CanonicalElement> {
        let params = self.params.with_kind(kind);
        let mut out = CanonicalElement::identity(params);
        out.push_word(&self.to_word())?;
        Ok(out)
    }
}

fn encode_int(out: &mut Vec<u8>, n: &IBig) {
    use ibig::ops::UnsignedAbs;
    let negative = *n < IBig::from(0u8);
    let mag = n.unsigned_abs().to_le_bytes();
    out.push(negative as u8);
    out.extend_from_slice(&(mag.len() as u16).to_le_bytes());
    out.extend_from_slice(&mag);
}

fn encode_point(out: &mut Vec<u8>, pt: &TPoint) {
    encode_int(out, &pt.a);
    encode_int(out, &pt.b);
}

/// Prints the normal form in word grammar, syllables as `a^n b^m` blocks.
impl fmt::Display for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let block = |pt: &TPoint, parts: &mut Vec<String>| {
            for (n, c) in [(&pt.a, 'a'), (&pt.b, 'b')] {
                if *n != IBig::from(0u8) {
                    parts.push(power_token(c, n));
                }
            }
        };
        for (h, l) in &self.prefix {
            block(h, &mut parts);
            parts.push(l.letter().symbol().to_string());
        }
        block(&self.tail, &mut parts);
        if self.z != IBig::from(0u8) {
            parts.push(power_token('z', &self.z));
        }
        f.write_str(&parts.join(" "))
    }
}

fn power_token(c: char, n: &IBig) -> String {
    if *n == IBig::from(1u8) {
        c.to_string()
    } else if *n == IBig::from(-1) {
        c.to_ascii_uppercase().to_string()
    } else {
        format!("{c}^{n}")
    }
}

/// Lists `(TPoint, letter)` pairs, the tail and the z-exponent.
impl fmt::Debug for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (h, l) in &self.prefix {
            write!(f, "{h} {l}, ")?;
        }
        write!(f, "{}] z^{}", self.tail, self.z)
    }
}

/// Normal form of the element represented by `w`.
pub fn canonicalize(params: &GroupParams, w: &Word) -> Result<CanonicalElement> {
    let mut e = CanonicalElement::identity(*params);
    e.push_word(w)?;
    Ok(e)
}

/// The unique `N` with `w = z^N` in `B̃_pq+`.
pub fn z_exponent(params: &GroupParams, w: &Word) -> Result<IBig> {
    if !params.track_z() {
        return Err(Error::WrongGroup("the central extension tbpq+"));
    }
    let e = canonicalize(params, w)?;
    if e.stable_len() != 0 || !e.tail.is_zero() {
        return Err(Error::NontrivialInBpqPlus);
    }
    Ok(e.z)
}

/// Whether `u` and `v` represent the same element.
pub fn words_equal(params: &GroupParams, u: &Word, v: &Word) -> Result<bool> {
    Ok(canonicalize(params, u)? == canonicalize(params, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn b21() -> GroupParams {
        GroupParams::bpq(2, 1).unwrap()
    }

    fn tilde21() -> GroupParams {
        GroupParams::tilde(2, 1).unwrap()
    }

    fn canon(g: &GroupParams, s: &str) -> CanonicalElement {
        canonicalize(g, &parse_word(s).unwrap()).unwrap()
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(GroupParams::bpq(2, 2).is_err());
        assert!(GroupParams::bpq(2, 0).is_err());
        assert!(GroupParams::bpq(1, 2).is_err());
    }

    #[test]
    fn pinch_s_inverse_a_s() {
        let g = b21();
        assert_eq!(canon(&g, "S a s").t_eval(), Some(TPoint::new(2, 1)));
    }

    #[test]
    fn reverse_pinch() {
        let g = b21();
        assert_eq!(canon(&g, "s a a b S").t_eval(), Some(TPoint::new(1, 0)));
    }

    #[test]
    fn commutator_gives_z() {
        let e = canon(&tilde21(), "B H b h");
        assert_eq!(e.stable_len(), 0);
        assert!(e.tail().is_zero());
        assert_eq!(*e.z_exp(), IBig::from(1));
    }

    #[test]
    fn multiply_and_invert_examples() {
        let g = b21();
        let id = canon(&g, "a").multiply(&canon(&g, "A")).unwrap();
        assert!(id.is_identity());
        let x = canon(&g, "S a s");
        assert_eq!(x.multiply(&x).unwrap().t_eval(), Some(TPoint::new(4, 2)));
        let t = tilde21();
        let bh = canon(&t, "b h");
        assert_eq!(bh.invert(), canon(&t, "H B"));
        assert!(bh.multiply(&bh.invert()).unwrap().is_identity());
    }

    #[test]
    fn mismatched_groups() {
        let x = canon(&b21(), "a");
        let y = canon(&GroupParams::bpq(3, 2).unwrap(), "a");
        assert_eq!(x.multiply(&y), Err(Error::MismatchedGroups));
    }

    #[test]
    fn t_eval_examples() {
        let g = b21();
        assert_eq!(canon(&g, "a b").t_eval(), Some(TPoint::new(1, 1)));
        assert_eq!(canon(&g, "s a a S").t_eval(), None);
        assert_eq!(canon(&g, "S a s T a t").t_eval(), Some(TPoint::new(4, 0)));
    }

    #[test]
    fn disabled_letters() {
        let g = b21();
        assert!(matches!(
            canonicalize(&g, &parse_word("h").unwrap()),
            Err(Error::DisabledLetter(Generator::Theta, _))
        ));
        let g = GroupParams::bpq_plus(2, 1).unwrap();
        assert!(matches!(
            canonicalize(&g, &parse_word("z").unwrap()),
            Err(Error::DisabledLetter(Generator::Z, _))
        ));
    }

    #[test]
    fn z_exponent_examples() {
        let t = tilde21();
        let z = |s: &str| z_exponent(&t, &parse_word(s).unwrap()).unwrap();
        assert_eq!(z("B H b h"), IBig::from(1));
        assert_eq!(z("b^-2 h^-3 b^2 h^3"), IBig::from(6));
        assert_eq!(
            z_exponent(&t, &parse_word("a").unwrap()),
            Err(Error::NontrivialInBpqPlus)
        );
        assert!(matches!(
            z_exponent(&b21(), &parse_word("").unwrap()),
            Err(Error::WrongGroup(_))
        ));
    }

    #[test]
    fn display_and_round_trip() {
        let g = b21();
        assert_eq!(canon(&g, "S a s").to_string(), "a^2 b");
        let e = canon(&g, "a^5 s b^-3 T a^7");
        let again = canonicalize(&g, &parse_word(&e.to_string()).unwrap()).unwrap();
        assert_eq!(again, e);
        assert_eq!(canonicalize(&g, &e.to_word()).unwrap(), e);
    }

    #[test]
    fn key_bytes_distinguish() {
        let g = b21();
        assert_ne!(canon(&g, "a s").key_bytes(), canon(&g, "s a").key_bytes());
        assert_eq!(canon(&g, "a b").key_bytes(), canon(&g, "b a").key_bytes());
    }

    #[test]
    fn transversal_invariant_holds() {
        let g = GroupParams::bpq_plus(3, 2).unwrap();
        let e = canon(&g, "a^5 s b^2 a^3 t a^-7 S b h a^4 T b^9 H");
        for (h, l) in e.prefix() {
            let (r, _) = decompose(h, *l, 3, 2);
            assert_eq!(&r, h, "syllable before {l} not in transversal");
        }
    }
}
