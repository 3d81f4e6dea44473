//! Cyclic normal forms: conjugacy-class representatives of normal forms.
//!
//! A hyperbolic element (at least one stable letter) is *rooted* when its
//! first syllable is trivial and no pinch forms across the wrap-around.
//! Every rooted conjugate of it is `c^{-M} R^{(j)} c^M` for a rotation
//! `R^{(j)}` of one rooted form and a power of `c = domain(first letter)`.
//! The representative fixes `M` by a residue condition on the first slab
//! that moves with `M`, then takes the least rotation.

use ibig::ops::DivRem;
use ibig::IBig;

use crate::engine::{decompose, CanonicalElement, StableLetter, TPoint};
use crate::error::{Error, Result};
use crate::snowflake::short_t_word;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicForm {
    /// The class representative.
    pub rep: CanonicalElement,
    /// `c` with `c⁻¹ · input · c = rep`, verified.
    pub conjugator: Word,
}

impl CyclicForm {
    pub fn is_elliptic(&self) -> bool {
        self.rep.stable_len() == 0
    }
}

pub(crate) fn floor_div(a: &IBig, b: &IBig) -> IBig {
    let (q, r) = a.clone().div_rem(b);
    let zero = IBig::from(0u8);
    if r != zero && ((r < zero) != (*b < zero)) {
        q - IBig::from(1u8)
    } else {
        q
    }
}

pub(crate) fn vertex_word(x: &CanonicalElement, pt: &TPoint) -> Word {
    short_t_word(x.params(), pt)
}

/// Conjugates to a rooted form (hyperbolic) or a vertex element (elliptic).
///
/// Returns `(r, c)` with `c⁻¹ x c = r`.
pub fn cyclic_reduce(x: &CanonicalElement) -> Result<(CanonicalElement, Word)> {
    let params = *x.params();
    let mut cur = x.clone();
    let mut conj = Word::empty();
    while cur.stable_len() > 0 {
        let h0 = cur.prefix()[0].0.clone();
        if !h0.is_zero() {
            cur = cur.conjugate_by(&CanonicalElement::vertex(params, h0.clone()))?;
            conj = conj.concat(&vertex_word(x, &h0));
            continue;
        }
        let first = cur.prefix()[0].1;
        let last = cur.prefix()[cur.stable_len() - 1].1;
        let (r, _) = decompose(cur.tail(), first, params.p, params.q);
        if last == first.inv() && r.is_zero() {
            let mut c = CanonicalElement::identity(params);
            c.push_letter(first);
            cur = cur.conjugate_by(&c)?;
            conj = conj.concat(&Word::from_letters(vec![first.letter()]));
            continue;
        }
        break;
    }
    Ok((cur, conj))
}

/// `P_j = σ_1 h_1 ⋯ σ_j h_j` of a rooted form, as element and short word.
pub(crate) fn rotation_prefix(r: &CanonicalElement, j: usize) -> (CanonicalElement, Word) {
    let params = *r.params();
    let mut e = CanonicalElement::identity(params);
    let mut w = Word::empty();
    let syllables: Vec<&TPoint> = r.syllables().collect();
    for (i, l) in r.letters().take(j).enumerate() {
        e.push_letter(l);
        let h = syllables[i + 1];
        e.push_vertex(h);
        w = w
            .concat(&Word::from_letters(vec![l.letter()]))
            .concat(&vertex_word(r, h));
    }
    (e, w)
}

/// The rotation `P_j⁻¹ R P_j` of a rooted form, with `P_j` as a word.
pub fn rotation(r: &CanonicalElement, j: usize) -> Result<(CanonicalElement, Word)> {
    let (p, w) = rotation_prefix(r, j);
    Ok((r.conjugate_by(&p)?, w))
}

/// How `c^M` propagates through the slabs of a rooted form.
#[derive(Debug, Clone)]
pub(crate) struct SlabWalk {
    /// `D_0, D_1, …`: direction carried into slab `j`, up to the first skew slab.
    pub dirs: Vec<TPoint>,
    /// First slab whose carried direction is not parallel to the next domain.
    pub skew: Option<usize>,
    /// For a fully parallel walk: `D_{k-1} − domain(L_0)`.
    pub delta: TPoint,
}

fn parallel_factor(d: &TPoint, c: &TPoint) -> IBig {
    if c.a != IBig::from(0u8) {
        &d.a / &c.a
    } else {
        &d.b / &c.b
    }
}

pub(crate) fn domain(r: &CanonicalElement, l: StableLetter) -> TPoint {
    l.domain(r.params().p, r.params().q)
}

pub(crate) fn slab_walk(r: &CanonicalElement) -> SlabWalk {
    let (p, q) = (r.params().p, r.params().q);
    let letters: Vec<StableLetter> = r.letters().collect();
    let k = letters.len();
    let mut dirs = vec![letters[0].image(p, q)];
    for j in 0..k - 1 {
        let d = &dirs[j];
        let c_next = letters[j + 1].domain(p, q);
        if d.cross(&c_next) != IBig::from(0u8) {
            return SlabWalk {
                dirs,
                skew: Some(j),
                delta: TPoint::zero(),
            };
        }
        let lambda = parallel_factor(d, &c_next);
        dirs.push(letters[j + 1].image(p, q).scale(&lambda));
    }
    let delta = dirs[k - 1].sub(&letters[0].domain(p, q));
    SlabWalk {
        dirs,
        skew: None,
        delta,
    }
}

/// Syllable `g_j` following letter `L_j` of a rooted form.
pub(crate) fn slab_syllable(r: &CanonicalElement, j: usize) -> &TPoint {
    r.syllables().nth(j + 1).expect("slab index in range")
}

/// The shift `M` selecting the representative of `{c^{-M} R c^M}`.
fn edge_shift(r: &CanonicalElement) -> IBig {
    let walk = slab_walk(r);
    let zero = IBig::from(0u8);
    match walk.skew {
        Some(j) => {
            let c_next = domain(r, r.letters().nth(j + 1).expect("next letter"));
            let g = slab_syllable(r, j);
            floor_div(&g.cross(&c_next), &walk.dirs[j].cross(&c_next))
        }
        None => {
            let g = r.tail();
            if walk.delta.a != zero {
                floor_div(&g.a, &walk.delta.a)
            } else if walk.delta.b != zero {
                floor_div(&g.b, &walk.delta.b)
            } else {
                zero
            }
        }
    }
}

/// Applies the representative shift to a rooted form.
pub(crate) fn normalize_shift(r: &CanonicalElement) -> Result<(CanonicalElement, Word)> {
    let m = edge_shift(r);
    if m == IBig::from(0u8) {
        return Ok((r.clone(), Word::empty()));
    }
    let first = r.letters().next().expect("hyperbolic");
    let shift = domain(r, first).scale(&m);
    let c = CanonicalElement::vertex(*r.params(), shift.clone());
    Ok((r.conjugate_by(&c)?, vertex_word(r, &shift)))
}

/// Canonical representative of the conjugacy class of `x`.
///
/// Elliptic elements are returned as the vertex element reached by cyclic
/// reduction; roots under edge moves are the conjugacy module's concern.
pub fn cyclic_canonical(x: &CanonicalElement) -> Result<CyclicForm> {
    let (r, c) = cyclic_reduce(x)?;
    let mut best: Option<(CanonicalElement, Word)> = None;
    if r.stable_len() == 0 {
        best = Some((r, c));
    } else {
        for j in 0..r.stable_len() {
            let (rot, pj) = rotation(&r, j)?;
            let (rep, shift) = normalize_shift(&rot)?;
            let better = best
                .as_ref()
                .is_none_or(|(b, _)| rep.canonical_cmp(b).is_lt());
            if better {
                best = Some((rep, c.concat(&pj).concat(&shift)));
            }
        }
    }
    let (rep, conjugator) = best.expect("at least one candidate");
    let conjugator = conjugator.free_reduce();
    let check = x.conjugate_by(&crate::engine::canonicalize(x.params(), &conjugator)?)?;
    if check != rep {
        return Err(Error::CertificateFailed("cyclic form conjugator"));
    }
    Ok(CyclicForm { rep, conjugator })
}
