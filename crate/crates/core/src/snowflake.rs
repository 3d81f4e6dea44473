//! Short words: snowflake words `w_N` for `a^N`, short words for arbitrary
//! elements of `⟨a, b⟩`, and short words for powers of the central `z`.

use std::collections::HashMap;
use std::sync::RwLock;

use ibig::ops::{Abs, DivRem};
use ibig::IBig;

use crate::engine::{CanonicalElement, GroupParams, TPoint};
use crate::words::{Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnowflakeStats {
    pub n: IBig,
    pub word: Word,
    pub length: usize,
    /// Least `d ≥ 1` with `|N| ≤ (2p/q)^d`.
    pub depth: u32,
}

/// Memo table shared between calls, keyed by `(p, q, N)`.
///
/// Readers share the lock; each key is written at most once per value.
/// Entries stop being added once `capacity` is reached.
#[derive(Debug)]
pub struct SnowflakeCache {
    map: RwLock<HashMap<(u32, u32, IBig), Word>>,
    capacity: usize,
}

impl SnowflakeCache {
    pub fn new(capacity: usize) -> Self {
        SnowflakeCache {
            map: RwLock::new(HashMap::new()),
            capacity,
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &(u32, u32, IBig)) -> Option<Word> {
        self.map.read().expect("cache lock").get(key).cloned()
    }

    fn insert(&self, key: (u32, u32, IBig), w: &Word) {
        let mut map = self.map.write().expect("cache lock");
        if map.len() < self.capacity {
            map.entry(key).or_insert_with(|| w.clone());
        }
    }
}

impl Default for SnowflakeCache {
    fn default() -> Self {
        SnowflakeCache::new(1 << 16)
    }
}

fn a_power(n: usize, inverse: bool) -> Vec<Letter> {
    vec![Letter::new(Generator::A, inverse); n]
}

/// The recursion for `N ≥ 0`, memoized in `local` and optionally `shared`.
fn build(
    p: u32,
    q: u32,
    n: &IBig,
    local: &mut HashMap<IBig, Word>,
    shared: Option<&SnowflakeCache>,
) -> Word {
    let two_p = IBig::from(2 * p);
    if *n < two_p {
        let k = usize::try_from(n).expect("small exponent");
        return Word::from_letters(a_power(k, false));
    }
    if let Some(w) = local.get(n) {
        return w.clone();
    }
    let key = (p, q, n.clone());
    if let Some(w) = shared.and_then(|c| c.get(&key)) {
        local.insert(n.clone(), w.clone());
        return w;
    }
    let (n0, eps) = n.clone().div_rem(&two_p);
    let inner = build(p, q, &(n0 * IBig::from(q)), local, shared);
    let eps = usize::try_from(&eps).expect("remainder below 2p");
    let mut letters = a_power(eps, false);
    letters.reserve(2 * inner.len() + 4);
    letters.push(Letter::neg(Generator::S));
    letters.extend_from_slice(inner.letters());
    letters.push(Letter::pos(Generator::S));
    letters.push(Letter::neg(Generator::T));
    letters.extend_from_slice(inner.letters());
    letters.push(Letter::pos(Generator::T));
    let w = Word::from_letters(letters);
    local.insert(n.clone(), w.clone());
    if let Some(c) = shared {
        c.insert(key, &w);
    }
    w
}

/// Least `d ≥ 1` with `|N| · q^d ≤ (2p)^d`.
pub fn snowflake_depth(params: &GroupParams, n: &IBig) -> u32 {
    let n = n.abs();
    let (mut top, mut bottom) = (IBig::from(2 * params.p), IBig::from(params.q));
    let mut d = 1;
    while &n * &bottom > top {
        top *= IBig::from(2 * params.p);
        bottom *= IBig::from(params.q);
        d += 1;
    }
    d
}

fn stats(params: &GroupParams, n: &IBig, shared: Option<&SnowflakeCache>) -> SnowflakeStats {
    let mut local = HashMap::new();
    let w = build(params.p, params.q, &n.abs(), &mut local, shared);
    let word = if *n < IBig::from(0u8) { w.inverse() } else { w };
    SnowflakeStats {
        n: n.clone(),
        length: word.len(),
        depth: snowflake_depth(params, n),
        word,
    }
}

/// The snowflake word `w_N`. Negative `N` gives the formal inverse of `w_{-N}`.
pub fn snowflake_word(params: &GroupParams, n: &IBig) -> SnowflakeStats {
    stats(params, n, None)
}

/// As [`snowflake_word`], reusing and filling a shared memo table.
pub fn snowflake_word_cached(
    cache: &SnowflakeCache,
    params: &GroupParams,
    n: &IBig,
) -> SnowflakeStats {
    stats(params, n, Some(cache))
}

/// `(2p + 3)(2^d − 1)`.
pub fn length_law_bound(params: &GroupParams, depth: u32) -> u64 {
    (2 * params.p as u64 + 3) * ((1u64 << depth) - 1)
}

/// `(4p + 6) · N^{1/α}`.
pub fn distortion_bound(params: &GroupParams, n: f64) -> f64 {
    (4.0 * params.p as f64 + 6.0) * n.abs().powf(1.0 / params.alpha())
}

/// `K` with `|short_t_word(pt)| ≤ K·(|n_a| + |n_b|)^{1/α} + K`.
pub fn short_t_constant(params: &GroupParams) -> f64 {
    let inv = 1.0 / params.alpha();
    (4.0 * params.p as f64 + 6.0) * ((params.p as f64 + 1.0).powf(inv) + (params.q as f64).powf(inv))
}

fn conjugated(stable: Generator, inner: &Word) -> Word {
    let mut letters = Vec::with_capacity(inner.len() + 2);
    letters.push(Letter::neg(stable));
    letters.extend_from_slice(inner.letters());
    letters.push(Letter::pos(stable));
    Word::from_letters(letters)
}

/// A word in `a, s, t` equal to `a^{n_a} b^{n_b}` in `B_pq`.
///
/// The shorter of `a^{N'} (a^p b)^{n_b}` and `a^{N''} (a^p b^{-1})^{-n_b}`,
/// the first on ties. The powers are `s⁻¹ w_{q n_b} s` and `t⁻¹ w_{-q n_b} t`.
pub fn short_t_word(params: &GroupParams, pt: &TPoint) -> Word {
    short_t_word_with(params, pt, None)
}

pub fn short_t_word_cached(cache: &SnowflakeCache, params: &GroupParams, pt: &TPoint) -> Word {
    short_t_word_with(params, pt, Some(cache))
}

fn short_t_word_with(params: &GroupParams, pt: &TPoint, cache: Option<&SnowflakeCache>) -> Word {
    let p = IBig::from(params.p);
    let q = IBig::from(params.q);
    let zero = IBig::from(0u8);
    let sf = |n: &IBig| stats(params, n, cache).word;
    let conj = |g: Generator, n: &IBig| {
        if *n == zero {
            Word::empty()
        } else {
            conjugated(g, &sf(n))
        }
    };
    if pt.b == zero {
        return sf(&pt.a);
    }
    let via_s = sf(&(&pt.a - &p * &pt.b)).concat(&conj(Generator::S, &(&q * &pt.b)));
    let via_t = sf(&(&pt.a + &p * &pt.b)).concat(&conj(Generator::T, &(-&q * &pt.b)));
    if via_t.len() < via_s.len() {
        via_t
    } else {
        via_s
    }
}

/// A word for a normal form with every syllable written by
/// [`short_t_word`] (or literally, when that is shorter) and the central
/// part by [`short_z_word`].
pub fn short_element_word(x: &CanonicalElement) -> Word {
    let params = x.params();
    let syllable = |h: &TPoint| {
        let literal = h.literal_word();
        let short = short_t_word(params, h);
        if literal.len() <= short.len() {
            literal
        } else {
            short
        }
    };
    let mut letters = Vec::new();
    for (h, l) in x.prefix() {
        letters.extend(syllable(h).into_letters());
        letters.push(l.letter());
    }
    letters.extend(syllable(x.tail()).into_letters());
    letters.extend(short_z_word(params, x.z_exp()).into_letters());
    Word::from_letters(letters)
}

/// Largest `m` with `m ≤ n^α`.
///
/// Exact when `α` is an integer or `n` is a power of two; otherwise a
/// rounded float, still an integer no larger than `n^α` up to rounding.
pub fn floor_pow_alpha(params: &GroupParams, n: u64) -> IBig {
    let ratio_num = 2 * params.p as u64;
    let q = params.q as u64;
    if ratio_num.is_multiple_of(q) && (ratio_num / q).is_power_of_two() {
        let alpha = (ratio_num / q).trailing_zeros();
        return IBig::from(n).pow(alpha as usize);
    }
    if n.is_power_of_two() {
        let k = n.trailing_zeros() as usize;
        return IBig::from(ratio_num).pow(k) / IBig::from(q).pow(k);
    }
    let v = (n as f64).powf(params.alpha());
    IBig::from(v.floor() as u128)
}

/// `W_n = ω⁻¹ θ⁻ⁿ ω θⁿ` with `ω` a short word for `b^{⌊n^α⌋}`; equals
/// `z^{n⌊n^α⌋}` in `B̃_pq+`. Returns the word and its z-exponent.
pub fn commutator_word(params: &GroupParams, n: u64) -> (Word, IBig) {
    let m = floor_pow_alpha(params, n);
    let omega = short_t_word(params, &TPoint::new(0, m.clone()));
    let n_i = i64::try_from(n).expect("n fits i64");
    let w = Word::product([
        &omega.inverse(),
        &Word::power_of(Generator::Theta, -n_i),
        &omega,
        &Word::power_of(Generator::Theta, n_i),
    ]);
    (w, m * IBig::from(n))
}

/// Largest `n ≥ 1` with `n⌊n^α⌋ ≤ m`, or `None` when `m < 1`.
fn peel_index(params: &GroupParams, m: &IBig) -> Option<u64> {
    if *m < IBig::from(1u8) {
        return None;
    }
    let value = |n: u64| floor_pow_alpha(params, n) * IBig::from(n);
    let mut hi = 1u64;
    while value(hi * 2) <= *m {
        hi *= 2;
    }
    let (mut lo, mut hi) = (hi, hi * 2);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if value(mid) <= *m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// A word equal to `z^M` in `B̃_pq+`, built by greedily peeling commutator
/// words `W_n` (`n ≥ 2`) and finishing with explicit `z` letters.
pub fn short_z_word(params: &GroupParams, m: &IBig) -> Word {
    let negative = *m < IBig::from(0u8);
    let mut rest = m.abs();
    let mut out = Word::empty();
    while let Some(n) = peel_index(params, &rest).filter(|&n| n >= 2) {
        let (w, value) = commutator_word(params, n);
        out = out.concat(&w);
        rest -= value;
    }
    let tail = i64::try_from(&rest).expect("remainder below 2⌊2^α⌋");
    out = out.concat(&Word::power_of(Generator::Z, tail));
    if negative {
        out.inverse()
    } else {
        out
    }
}

/// `K'` with `|short_z_word(M)| ≤ K'·|M|^{1/(α+1)} + K'`, validated over
/// the test range for both standard configurations.
pub fn short_z_constant(params: &GroupParams) -> f64 {
    6.0 * (short_t_constant(params) + 1.0)
}
