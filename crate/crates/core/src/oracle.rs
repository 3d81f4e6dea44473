//! Brute-force ground truth: Cayley balls, geodesic lengths, exhaustive
//! conjugator search, and random null words.

use std::collections::HashMap;
use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{canonicalize, CanonicalElement, GroupParams};
use crate::error::{Error, Result};
use crate::words::{Generator, Letter, Word};

/// Default limit on the number of stored elements.
pub const DEFAULT_SIZE_CAP: usize = 4_000_000;

/// Neighbor order: `a A b B s S t T h H z Z`, restricted to enabled letters.
pub fn neighbor_letters(params: &GroupParams) -> Vec<Letter> {
    params
        .generators()
        .into_iter()
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect()
}

#[derive(Debug, Clone)]
struct Entry {
    element: CanonicalElement,
    dist: u32,
    parent: Option<(usize, Letter)>,
}

/// All elements within `radius` of the identity, in BFS order.
#[derive(Debug, Clone)]
pub struct Ball {
    params: GroupParams,
    radius: u32,
    entries: Vec<Entry>,
    index: HashMap<Vec<u8>, usize>,
}

/// Key, element, parent index and the letter that reached it.
type Candidate = (Vec<u8>, CanonicalElement, usize, Letter);

/// Level-synchronous BFS. Neighbors of a level are computed in parallel and
/// merged sequentially in (frontier, letter) order, so the table and the
/// witnesses match a sequential search.
pub fn ball(params: &GroupParams, radius: u32, size_cap: usize) -> Result<Ball> {
    let letters = neighbor_letters(params);
    let identity = CanonicalElement::identity(*params);
    let mut index = HashMap::new();
    index.insert(identity.key_bytes(), 0);
    let mut entries = vec![Entry {
        element: identity,
        dist: 0,
        parent: None,
    }];
    let mut frontier = 0..1;
    for level in 1..=radius {
        let expanded: Vec<Vec<Candidate>> = frontier
            .clone()
            .into_par_iter()
            .map(|i| {
                letters
                    .iter()
                    .map(|&l| {
                        let mut e = entries[i].element.clone();
                        e.push_word_letter(l).expect("enabled letter");
                        (e.key_bytes(), e, i, l)
                    })
                    .collect()
            })
            .collect();
        let start = entries.len();
        for (key, element, parent, letter) in expanded.into_iter().flatten() {
            if index.contains_key(&key) {
                continue;
            }
            if entries.len() >= size_cap {
                return Err(Error::BallTooLarge {
                    cap: size_cap,
                    radius: level,
                });
            }
            index.insert(key, entries.len());
            entries.push(Entry {
                element,
                dist: level,
                parent: Some((parent, letter)),
            });
        }
        frontier = start..entries.len();
    }
    Ok(Ball {
        params: *params,
        radius,
        entries,
        index,
    })
}

impl Ball {
    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Elements and distances in BFS order.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalElement, u32)> + '_ {
        self.entries.iter().map(|e| (&e.element, e.dist))
    }

    pub fn distance(&self, x: &CanonicalElement) -> Option<u32> {
        self.index.get(&x.key_bytes()).map(|&i| self.entries[i].dist)
    }

    /// Number of elements at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius as usize + 1];
        for e in &self.entries {
            out[e.dist as usize] += 1;
        }
        out
    }

    /// The BFS-tree word reaching entry `i`; a geodesic.
    fn witness_at(&self, mut i: usize) -> Word {
        let mut letters = Vec::new();
        while let Some((parent, l)) = self.entries[i].parent {
            letters.push(l);
            i = parent;
        }
        letters.reverse();
        Word::from_letters(letters)
    }

    pub fn witness(&self, x: &CanonicalElement) -> Option<Word> {
        self.index.get(&x.key_bytes()).map(|&i| self.witness_at(i))
    }

    /// Exact `d(1, g)` when it is at most `2 · radius`.
    pub fn geodesic_length(&self, g: &CanonicalElement) -> Result<Option<u32>> {
        if let Some(d) = self.distance(g) {
            return Ok(Some(d));
        }
        let mut best: Option<u32> = None;
        for e in &self.entries {
            let rest = e.element.invert().multiply(g)?;
            if let Some(d) = self.distance(&rest) {
                let total = e.dist + d;
                if best.is_none_or(|b| total < b) {
                    best = Some(total);
                }
            }
        }
        Ok(best)
    }

    /// A shortest `x` with `x⁻¹ u x = v` and `|x| ≤ 2 · radius`, found by
    /// meeting `{y⁻¹ u y}` and `{w v w⁻¹}` with `x = y w`.
    pub fn brute_conjugator(&self, u: &CanonicalElement, v: &CanonicalElement) -> Result<Option<Word>> {
        let left: Vec<Vec<u8>> = self
            .entries
            .par_iter()
            .map(|e| u.conjugate_by(&e.element).map(|c| c.key_bytes()))
            .collect::<Result<_>>()?;
        let mut first: HashMap<Vec<u8>, usize> = HashMap::with_capacity(left.len());
        for (i, key) in left.into_iter().enumerate() {
            first.entry(key).or_insert(i);
        }
        let right: Vec<Vec<u8>> = self
            .entries
            .par_iter()
            .map(|e| v.conjugate_by(&e.element.invert()).map(|c| c.key_bytes()))
            .collect::<Result<_>>()?;
        let mut best: Option<(u32, usize, usize)> = None;
        for (j, key) in right.iter().enumerate() {
            if let Some(&i) = first.get(key) {
                let total = self.entries[i].dist + self.entries[j].dist;
                if best.is_none_or(|(b, _, _)| total < b) {
                    best = Some((total, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else {
            return Ok(None);
        };
        let x = self.witness_at(i).concat(&self.witness_at(j));
        let xe = canonicalize(&self.params, &x)?;
        if u.conjugate_by(&xe)? != *v {
            return Err(Error::CertificateFailed("brute-force conjugator"));
        }
        Ok(Some(x))
    }

    /// Header: magic, p, q, letter flags, radius, count; then `(key, dist)`
    /// pairs sorted by key. Integers little-endian.
    pub fn write_dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut pairs: Vec<(Vec<u8>, u32)> = self
            .entries
            .iter()
            .map(|e| (e.element.key_bytes(), e.dist))
            .collect();
        pairs.sort();
        out.write_all(DUMP_MAGIC)?;
        out.write_all(&self.params.p.to_le_bytes())?;
        out.write_all(&self.params.q.to_le_bytes())?;
        out.write_all(&[letter_flags(&self.params)])?;
        out.write_all(&self.radius.to_le_bytes())?;
        out.write_all(&(pairs.len() as u64).to_le_bytes())?;
        for (key, dist) in pairs {
            out.write_all(&(key.len() as u32).to_le_bytes())?;
            out.write_all(&key)?;
            out.write_all(&dist.to_le_bytes())?;
        }
        Ok(())
    }
}

const DUMP_MAGIC: &[u8; 8] = b"SFBALL1\0";

fn letter_flags(params: &GroupParams) -> u8 {
    [Generator::S, Generator::T, Generator::Theta, Generator::Z]
        .iter()
        .enumerate()
        .filter(|(_, g)| params.enables(**g))
        .fold(0u8, |acc, (i, _)| acc | (1 << i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallDump {
    pub p: u32,
    pub q: u32,
    /// Bits for `s, t, θ, z`.
    pub letters: u8,
    pub radius: u32,
    pub pairs: Vec<(Vec<u8>, u32)>,
}

pub fn read_dump<R: Read>(mut input: R) -> Result<BallDump> {
    let bad = |m: &str| Error::BadDump(m.to_string());
    let mut buf = Vec::new();
    input
        .read_to_end(&mut buf)
        .map_err(|e| Error::BadDump(e.to_string()))?;
    let mut pos = 0usize;
    let mut take = |n: usize| -> Result<&[u8]> {
        let s = buf.get(pos..pos + n).ok_or_else(|| bad("truncated"))?;
        pos += n;
        Ok(s)
    };
    if take(8)? != DUMP_MAGIC {
        return Err(bad("wrong magic"));
    }
    let u32_at = |s: &[u8]| u32::from_le_bytes(s.try_into().expect("four bytes"));
    let p = u32_at(take(4)?);
    let q = u32_at(take(4)?);
    let letters = take(1)?[0];
    let radius = u32_at(take(4)?);
    let count = u64::from_le_bytes(take(8)?.try_into().expect("eight bytes"));
    let mut pairs = Vec::new();
    for _ in 0..count {
        let len = u32_at(take(4)?) as usize;
        let key = take(len)?.to_vec();
        let dist = u32_at(take(4)?);
        pairs.push((key, dist));
    }
    if take(1).is_ok() {
        return Err(bad("trailing bytes"));
    }
    Ok(BallDump {
        p,
        q,
        letters,
        radius,
        pairs,
    })
}

/// Exact `d(1, w)` if it is at most `cap`, via a ball of radius `⌈cap/2⌉`.
pub fn geodesic_length(params: &GroupParams, w: &Word, cap: u32) -> Result<Option<u32>> {
    let g = canonicalize(params, w)?;
    let b = ball(params, cap.div_ceil(2), DEFAULT_SIZE_CAP)?;
    Ok(b.geodesic_length(&g)?.filter(|&d| d <= cap))
}

/// A shortest conjugator of length at most `cap`, or `None` within the cap.
pub fn brute_conjugator(params: &GroupParams, u: &Word, v: &Word, cap: u32) -> Result<Option<Word>> {
    let cu = canonicalize(params, u)?;
    let cv = canonicalize(params, v)?;
    let b = ball(params, cap.div_ceil(2), DEFAULT_SIZE_CAP)?;
    Ok(b.brute_conjugator(&cu, &cv)?.filter(|x| x.len() as u32 <= cap))
}

/// Defining relators of the configuration, each equal to the identity.
pub fn relators(params: &GroupParams) -> Vec<Word> {
    let p = params.p as i64;
    let q = params.q as i64;
    let pw = |g, n| Word::power_of(g, n);
    let (a, b, s, t, h, z) = (
        Generator::A,
        Generator::B,
        Generator::S,
        Generator::T,
        Generator::Theta,
        Generator::Z,
    );
    let mut out = vec![
        Word::product([&pw(a, 1), &pw(b, 1), &pw(a, -1), &pw(b, -1)]),
        Word::product([&pw(s, -1), &pw(a, q), &pw(s, 1), &pw(b, -1), &pw(a, -p)]),
        Word::product([&pw(t, -1), &pw(a, q), &pw(t, 1), &pw(b, 1), &pw(a, -p)]),
    ];
    if params.has_theta() {
        let mut r = Word::product([&pw(b, -1), &pw(h, -1), &pw(b, 1), &pw(h, 1)]);
        if params.track_z() {
            r = r.concat(&pw(z, -1));
        }
        out.push(r);
    }
    if params.track_z() {
        for g in [a, b, s, t, h] {
            out.push(Word::product([&pw(z, -1), &pw(g, -1), &pw(z, 1), &pw(g, 1)]));
        }
    }
    out
}

/// A uniformly random word of length `len` over the enabled letters.
pub fn random_word<R: Rng>(params: &GroupParams, len: usize, rng: &mut R) -> Word {
    let letters = neighbor_letters(params);
    Word::from_letters((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
}

fn random_conjugated_relator<R: Rng>(params: &GroupParams, rels: &[Word], rng: &mut R) -> Word {
    let r = &rels[rng.gen_range(0..rels.len())];
    let r = if rng.gen_bool(0.5) { r.inverse() } else { r.clone() };
    let c = random_word(params, rng.gen_range(0..=6), rng);
    Word::product([&c.inverse(), &r, &c])
}

/// A product of `size` conjugated relators, deterministic in `seed`.
pub fn random_null_word(params: &GroupParams, size: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rels = relators(params);
    let parts: Vec<Word> = (0..size)
        .map(|_| random_conjugated_relator(params, &rels, &mut rng))
        .collect();
    Word::product(parts.iter())
}

/// `w` with `count` conjugated relators inserted at random positions.
pub fn insert_relators<R: Rng>(params: &GroupParams, w: &Word, count: usize, rng: &mut R) -> Word {
    let rels = relators(params);
    let mut letters = w.letters().to_vec();
    for _ in 0..count {
        let at = rng.gen_range(0..=letters.len());
        let r = random_conjugated_relator(params, &rels, rng);
        letters.splice(at..at, r.into_letters());
    }
    Word::from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn b21() -> GroupParams {
        GroupParams::bpq(2, 1).unwrap()
    }

    #[test]
    fn ball_radius_one_and_zero() {
        assert_eq!(ball(&b21(), 1, 100).unwrap().len(), 9);
        let b = ball(&b21(), 0, 100).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.distance(&CanonicalElement::identity(b21())), Some(0));
    }

    #[test]
    fn size_cap_is_reported() {
        assert!(matches!(
            ball(&b21(), 3, 50),
            Err(Error::BallTooLarge { cap: 50, .. })
        ));
    }

    #[test]
    fn geodesic_examples() {
        let g = b21();
        assert_eq!(geodesic_length(&g, &w("a^4"), 4).unwrap(), Some(4));
        assert_eq!(geodesic_length(&g, &w("a b A B"), 4).unwrap(), Some(0));
        assert_eq!(geodesic_length(&g, &w("S a s"), 4).unwrap(), Some(3));
        assert_eq!(geodesic_length(&g, &w("a^5"), 3).unwrap(), None);
    }

    #[test]
    fn brute_conjugator_examples() {
        let g = b21();
        assert_eq!(brute_conjugator(&g, &w("a"), &w("a a b"), 4).unwrap(), Some(w("s")));
        assert_eq!(brute_conjugator(&g, &w("a"), &w("b"), 6).unwrap(), None);
        let t = GroupParams::tilde(2, 1).unwrap();
        assert_eq!(brute_conjugator(&t, &w("b"), &w("b z"), 2).unwrap(), Some(w("h")));
    }

    #[test]
    fn null_words() {
        for g in [b21(), GroupParams::bpq_plus(3, 2).unwrap(), GroupParams::tilde(2, 1).unwrap()] {
            assert!(random_null_word(&g, 0, 1).is_empty());
            for seed in 0..20 {
                let n = random_null_word(&g, 20, seed);
                assert!(canonicalize(&g, &n).unwrap().is_identity(), "seed {seed}");
                assert_eq!(n, random_null_word(&g, 20, seed));
            }
        }
    }

    #[test]
    fn dump_round_trip() {
        let b = ball(&GroupParams::bpq_plus(2, 1).unwrap(), 2, 1000).unwrap();
        let mut bytes = Vec::new();
        b.write_dump(&mut bytes).unwrap();
        let d = read_dump(&bytes[..]).unwrap();
        assert_eq!((d.p, d.q, d.letters, d.radius), (2, 1, 0b111, 2));
        assert_eq!(d.pairs.len(), b.len());
        assert!(d.pairs.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(read_dump(&bytes[..bytes.len() - 1]).is_err());
    }
}
