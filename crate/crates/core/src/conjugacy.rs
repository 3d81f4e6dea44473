//! Conjugacy in `B_pq` and `B_pq+` with verified conjugators, elliptic
//! roots, and preferred representatives in the centralizer of `b`.

use std::fmt;

use ibig::ops::{Abs, DivRem};
use ibig::IBig;

use crate::cyclic::{cyclic_canonical, cyclic_reduce, domain, rotation, slab_syllable, slab_walk, vertex_word};
use crate::engine::{canonicalize, CanonicalElement, GroupKind, GroupParams, StableGen, TPoint};
use crate::error::{Error, Result};
use crate::words::{Generator, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DownMove {
    /// `(pk, k) ↦ (qk, 0)`, conjugating by `s⁻¹`.
    S,
    /// `(pk, −k) ↦ (qk, 0)`, conjugating by `t⁻¹`.
    T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticRoot {
    pub root: TPoint,
    /// `c` with `c⁻¹ · input · c = root`.
    pub conjugator: Word,
    pub trace: Vec<DownMove>,
}

/// Applies down-moves until none is available.
pub fn elliptic_root(params: &GroupParams, pt: &TPoint) -> EllipticRoot {
    let p = IBig::from(params.p);
    let q = IBig::from(params.q);
    let zero = IBig::from(0u8);
    let mut cur = pt.clone();
    let mut trace = Vec::new();
    let mut letters = Vec::new();
    loop {
        if cur.b == zero {
            break;
        }
        if cur.a == &p * &cur.b {
            cur = TPoint::new(&q * &cur.b, 0);
            trace.push(DownMove::S);
            letters.push(Letter::neg(Generator::S));
        } else if cur.a == -&p * &cur.b {
            cur = TPoint::new(-&q * &cur.b, 0);
            trace.push(DownMove::T);
            letters.push(Letter::neg(Generator::T));
        } else {
            break;
        }
    }
    EllipticRoot {
        root: cur,
        conjugator: Word::from_letters(letters),
        trace,
    }
}

/// Canonical representative of the conjugacy class of `x`, with `c` such
/// that `c⁻¹ x c` is the representative. Elliptic classes are represented
/// by their root.
pub fn class_representative(x: &CanonicalElement) -> Result<(CanonicalElement, Word)> {
    let form = cyclic_canonical(x)?;
    if !form.is_elliptic() {
        return Ok((form.rep, form.conjugator));
    }
    let params = *x.params();
    let root = elliptic_root(&params, form.rep.tail());
    let mut rep = CanonicalElement::vertex(params, root.root);
    rep.push_z(form.rep.z_exp());
    Ok((rep, form.conjugator.concat(&root.conjugator).free_reduce()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativeReason {
    /// One side is elliptic, the other hyperbolic.
    MixedTypes,
    /// Both elliptic with different roots.
    RootsDiffer,
    /// Different numbers of stable letters.
    LengthsDiffer,
    /// No rotation has the same stable-letter sequence.
    LettersDiffer,
    /// Letter sequences match but no edge-group power solves the slabs.
    NoEdgeSolution,
}

impl NegativeReason {
    pub fn tag(self) -> &'static str {
        match self {
            NegativeReason::MixedTypes => "mixed_types",
            NegativeReason::RootsDiffer => "roots_differ",
            NegativeReason::LengthsDiffer => "lengths_differ",
            NegativeReason::LettersDiffer => "letters_differ",
            NegativeReason::NoEdgeSolution => "no_edge_solution",
        }
    }
}

impl fmt::Display for NegativeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Conjugate,
    NotConjugate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjCertificate {
    pub verdict: Verdict,
    /// `x` with `x⁻¹ u x = v`, present iff conjugate.
    pub conjugator: Option<Word>,
    /// Class representative of `u`.
    pub canonical_rep: CanonicalElement,
    pub reason: Option<NegativeReason>,
}

impl ConjCertificate {
    pub fn is_conjugate(&self) -> bool {
        self.verdict == Verdict::Conjugate
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConjugacyOptions {
    /// Find the edge-group power by bounded search instead of a linear solve.
    pub eta_search: bool,
}

/// Decides conjugacy of `u` and `v` in `B_pq` or `B_pq+`.
pub fn conjugacy(params: &GroupParams, u: &Word, v: &Word) -> Result<ConjCertificate> {
    conjugacy_with(params, u, v, ConjugacyOptions::default())
}

pub fn conjugacy_with(
    params: &GroupParams,
    u: &Word,
    v: &Word,
    opts: ConjugacyOptions,
) -> Result<ConjCertificate> {
    if params.kind == GroupKind::TildeBpqPlus {
        return Err(Error::WrongGroup("bpq or bpq+"));
    }
    let cu = canonicalize(params, u)?;
    let cv = canonicalize(params, v)?;
    conjugacy_elements(&cu, &cv, opts)
}

/// As [`conjugacy`], on normal forms.
pub fn conjugacy_elements(
    cu: &CanonicalElement,
    cv: &CanonicalElement,
    opts: ConjugacyOptions,
) -> Result<ConjCertificate> {
    let (rep_u, _) = class_representative(cu)?;
    let negative = |reason| {
        Ok(ConjCertificate {
            verdict: Verdict::NotConjugate,
            conjugator: None,
            canonical_rep: rep_u.clone(),
            reason: Some(reason),
        })
    };
    let (ru, c_u) = cyclic_reduce(cu)?;
    let (rv, c_v) = cyclic_reduce(cv)?;
    let conjugator = match (ru.stable_len(), rv.stable_len()) {
        (0, 0) => {
            if ru.z_exp() != rv.z_exp() {
                return negative(NegativeReason::RootsDiffer);
            }
            let eu = elliptic_root(cu.params(), ru.tail());
            let ev = elliptic_root(cv.params(), rv.tail());
            if eu.root != ev.root {
                return negative(NegativeReason::RootsDiffer);
            }
            Word::product([&c_u, &eu.conjugator, &ev.conjugator.inverse(), &c_v.inverse()])
        }
        (0, _) | (_, 0) => return negative(NegativeReason::MixedTypes),
        (ku, kv) if ku != kv => return negative(NegativeReason::LengthsDiffer),
        (k, _) => {
            let letters_u: Vec<_> = ru.letters().collect();
            let mut any_match = false;
            let mut found = None;
            for j in 0..k {
                let (rot, pj) = rotation(&rv, j)?;
                if !rot.letters().eq(letters_u.iter().copied()) {
                    continue;
                }
                any_match = true;
                let m = if opts.eta_search {
                    search_shift(&ru, &rot)?
                } else {
                    solve_shift(&ru, &rot)?
                };
                if let Some(m) = m {
                    let shift = domain(&ru, letters_u[0]).scale(&m);
                    found = Some(Word::product([
                        &c_u,
                        &vertex_word(&ru, &shift),
                        &pj.inverse(),
                        &c_v.inverse(),
                    ]));
                    break;
                }
            }
            match found {
                Some(x) => x,
                None if any_match => return negative(NegativeReason::NoEdgeSolution),
                None => return negative(NegativeReason::LettersDiffer),
            }
        }
    };
    let conjugator = conjugator.free_reduce();
    let x = canonicalize(cu.params(), &conjugator)?;
    // Rewriting the syllables with short words often beats the assembled product.
    let short = crate::snowflake::short_element_word(&x);
    let conjugator = if short.len() < conjugator.len() { short } else { conjugator };
    if cu.conjugate_by(&x)? != *cv {
        return Err(Error::CertificateFailed("conjugator does not conjugate u to v"));
    }
    let (rep_v, _) = class_representative(cv)?;
    if rep_v != rep_u {
        return Err(Error::CertificateFailed("class representatives differ"));
    }
    Ok(ConjCertificate {
        verdict: Verdict::Conjugate,
        conjugator: Some(conjugator),
        canonical_rep: rep_u,
        reason: None,
    })
}

/// `c^{-M} R c^M` for `c` the domain generator of the first letter.
fn shifted(r: &CanonicalElement, m: &IBig) -> Result<CanonicalElement> {
    let first = r.letters().next().expect("hyperbolic");
    let c = CanonicalElement::vertex(*r.params(), domain(r, first).scale(m));
    r.conjugate_by(&c)
}

fn exact_div(a: &IBig, b: &IBig) -> Option<IBig> {
    let (q, r) = a.clone().div_rem(b);
    (r == IBig::from(0u8)).then_some(q)
}

/// Solves the slab equations for `M` with `c^{-M} R_u c^M = R_v`.
fn solve_shift(ru: &CanonicalElement, rv: &CanonicalElement) -> Result<Option<IBig>> {
    let walk = slab_walk(ru);
    let k = ru.stable_len();
    let zero = IBig::from(0u8);
    let parallel_slabs = walk.skew.unwrap_or(k - 1);
    for j in 0..parallel_slabs {
        if slab_syllable(ru, j) != slab_syllable(rv, j) {
            return Ok(None);
        }
    }
    let m = match walk.skew {
        Some(j) => {
            let c_next = domain(ru, ru.letters().nth(j + 1).expect("next letter"));
            let d = &walk.dirs[j];
            let delta = slab_syllable(ru, j).sub(slab_syllable(rv, j));
            let det = d.cross(&c_next);
            let (Some(m), Some(_)) = (
                exact_div(&delta.cross(&c_next), &det),
                exact_div(&d.cross(&delta), &det),
            ) else {
                return Ok(None);
            };
            m
        }
        None => {
            let gap = ru.tail().sub(rv.tail());
            let d = &walk.delta;
            if d.is_zero() {
                if !gap.is_zero() {
                    return Ok(None);
                }
                zero
            } else {
                let m = if d.a != zero {
                    exact_div(&gap.a, &d.a)
                } else {
                    exact_div(&gap.b, &d.b)
                };
                match m {
                    Some(m) if d.scale(&m) == gap => m,
                    _ => return Ok(None),
                }
            }
        }
    };
    Ok((shifted(ru, &m)? == *rv).then_some(m))
}

/// `η = ‖d‖₁‖d′‖₁ / |det(d, d′)|` at the first skew slab, or 1 when all
/// slabs are parallel.
pub(crate) fn eta(ru: &CanonicalElement) -> f64 {
    let walk = slab_walk(ru);
    match walk.skew {
        Some(j) => {
            let c_next = domain(ru, ru.letters().nth(j + 1).expect("next letter"));
            let d = &walk.dirs[j];
            let num = (d.l1() * c_next.l1()).to_f64();
            num / d.cross(&c_next).abs().to_f64()
        }
        None => 1.0,
    }
}

/// Bounded search `|M| ≤ 2η · max syllable 1-norm + 1`, checked by the engine.
fn search_shift(ru: &CanonicalElement, rv: &CanonicalElement) -> Result<Option<IBig>> {
    let max_norm = ru
        .syllables()
        .chain(rv.syllables())
        .map(|h| h.l1())
        .max()
        .unwrap_or_default();
    let bound = (2.0 * eta(ru) * max_norm.to_f64()).ceil() as i64 + 1;
    for step in 0..=2 * bound {
        let m = if step % 2 == 0 { step / 2 } else { -(step + 1) / 2 };
        let m = IBig::from(m);
        if shifted(ru, &m)? == *rv {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// `b^l · omega`, with omega a freely reduced word over `a, θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferredRep {
    pub params: GroupParams,
    pub l: IBig,
    pub omega: Word,
    /// `c` with `c⁻¹ · input · c = b^l omega`.
    pub conjugator: Word,
}

impl PreferredRep {
    /// The word `b^l omega` with `b^l` written as a short word.
    pub fn word(&self) -> Word {
        crate::snowflake::short_t_word(&self.params, &TPoint::new(0, self.l.clone())).concat(&self.omega)
    }

    pub fn element(&self) -> Result<CanonicalElement> {
        let mut e = CanonicalElement::vertex(self.params, TPoint::new(0, self.l.clone()));
        e.push_word(&self.omega)?;
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preferred {
    Rep(PreferredRep),
    /// The conjugacy class does not meet `C(b) = ⟨b⟩ × F(a, θ)`.
    MissesCentralizer,
}

/// Preferred representative of the class of `u` in `C(b)`, in `B_pq+`.
pub fn preferred_rep(params: &GroupParams, u: &Word) -> Result<Preferred> {
    if params.kind != GroupKind::BpqPlus {
        return Err(Error::WrongGroup("bpq+"));
    }
    preferred_rep_element(&canonicalize(params, u)?)
}

pub fn preferred_rep_element(x: &CanonicalElement) -> Result<Preferred> {
    let params = *x.params();
    let (rep, conjugator) = class_representative(x)?;
    let (l, omega) = if rep.stable_len() == 0 {
        let root = rep.tail();
        (root.b.clone(), literal_a(&root.a))
    } else if rep.letters().all(|l| l.gen == StableGen::Theta) {
        let mut l = IBig::from(0u8);
        let mut letters = Vec::new();
        let syllables: Vec<&TPoint> = rep.syllables().collect();
        letters.extend(literal_a(&syllables[0].a).into_letters());
        for (i, s) in rep.letters().enumerate() {
            letters.push(s.letter());
            letters.extend(literal_a(&syllables[i + 1].a).into_letters());
        }
        for h in &syllables {
            l += &h.b;
        }
        (l, Word::from_letters(letters).free_reduce())
    } else {
        return Ok(Preferred::MissesCentralizer);
    };
    let pref = PreferredRep {
        params,
        l,
        omega,
        conjugator,
    };
    let c = canonicalize(&params, &pref.conjugator)?;
    if x.conjugate_by(&c)? != pref.element()? {
        return Err(Error::CertificateFailed("preferred representative conjugator"));
    }
    Ok(Preferred::Rep(pref))
}

fn literal_a(n: &IBig) -> Word {
    Word::power_of(Generator::A, i64::try_from(n).expect("a-exponent fits i64"))
}
