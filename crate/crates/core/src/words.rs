//! Words over the generators `a, b, s, t, θ, z`.
//!
//! Text form: lowercase letters are positive, uppercase letters are inverses,
//! and `θ` is written `h`. An exponent `^n` or `^-n` applies to the single
//! preceding letter. Whitespace between tokens is ignored and the empty string
//! is the identity.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    S,
    T,
    Theta,
    Z,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::A,
        Generator::B,
        Generator::S,
        Generator::T,
        Generator::Theta,
        Generator::Z,
    ];

    /// Lowercase text symbol.
    pub fn symbol(self) -> char {
        match self {
            Generator::A => 'a',
            Generator::B => 'b',
            Generator::S => 's',
            Generator::T => 't',
            Generator::Theta => 'h',
            Generator::Z => 'z',
        }
    }

    fn from_symbol(c: char) -> Option<(Generator, bool)> {
        let gen = match c.to_ascii_lowercase() {
            'a' => Generator::A,
            'b' => Generator::B,
            's' => Generator::S,
            't' => Generator::T,
            'h' => Generator::Theta,
            'z' => Generator::Z,
            _ => return None,
        };
        Some((gen, c.is_ascii_uppercase()))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Theta => f.write_str("theta"),
            g => write!(f, "{}", g.symbol()),
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: Generator) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: Generator) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn symbol(self) -> char {
        let c = self.generator.symbol();
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A finite sequence of letters. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `g^n` as a literal word; negative `n` gives inverse letters.
    pub fn power_of(generator: Generator, n: i64) -> Self {
        let letter = Letter::new(generator, n < 0);
        Word(vec![letter; n.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Concatenation of several words, left to right.
    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut letters = Vec::new();
        for w in parts {
            letters.extend_from_slice(&w.0);
        }
        Word(letters)
    }

    /// The literal power `self^n` (inverse word repeated for negative `n`).
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        Word(letters)
    }

    /// Signed count of occurrences of `g`.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| l.sign())
            .sum()
    }

    /// The word with every occurrence of `g^{±1}` deleted.
    pub fn delete(&self, g: Generator) -> Word {
        Word(self.0.iter().copied().filter(|l| l.generator != g).collect())
    }

    pub fn uses(&self, g: Generator) -> bool {
        self.0.iter().any(|l| l.generator == g)
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Prints maximal runs of one letter as `x^n`, tokens separated by spaces.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let run = j - i;
            if run == 1 {
                write!(f, "{}", l.symbol())?;
            } else {
                write!(f, "{}^{}", l.symbol(), run)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_word(s)
    }
}

/// Parses the word grammar described in the module docs.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut i = 0;
    let err = |position: usize, message: &str| ParseError {
        position,
        message: message.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let Some((gen, inverse)) = Generator::from_symbol(c as char) else {
            return Err(err(i, &format!("unexpected character {:?}", text[i..].chars().next().unwrap())));
        };
        i += 1;
        let mut exponent: i64 = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            let caret = i;
            i += 1;
            let negative = i < bytes.len() && bytes[i] == b'-';
            if negative {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(caret, "exponent needs digits after '^'"));
            }
            exponent = text[start..i]
                .parse::<i64>()
                .map_err(|_| err(start, "exponent out of range"))?;
            if negative {
                exponent = -exponent;
            }
        }
        let letter = Letter::new(gen, inverse ^ (exponent < 0));
        letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

/// `root^multiplicity` is conjugate in the free group to the input, with
/// `root` primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    pub root: Word,
    pub multiplicity: usize,
}

/// Maximal root of a nontrivial element of the free group on `a`, `θ`.
///
/// Writes the reduced word as `u π u⁻¹` with `π` cyclically reduced and finds
/// the smallest period of `π`; the root is `u ρ u⁻¹` where `π = ρ^m`.
pub fn max_root(w: &Word) -> Result<RootDecomposition> {
    if let Some(l) = w
        .letters()
        .iter()
        .find(|l| !matches!(l.generator, Generator::A | Generator::Theta))
    {
        return Err(Error::ForeignLetter(l.generator));
    }
    let reduced = w.free_reduce();
    let letters = reduced.letters();
    if letters.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    let core = &letters[lo..hi];
    let period = smallest_period(core);
    let multiplicity = core.len() / period;
    let mut root = Vec::with_capacity(2 * lo + period);
    root.extend_from_slice(&letters[..lo]);
    root.extend_from_slice(&core[..period]);
    root.extend_from_slice(&letters[hi..]);
    Ok(RootDecomposition {
        root: Word(root),
        multiplicity,
    })
}

/// Smallest `d` dividing `len` with `s = (s[..d])^{len/d}`, via the KMP
/// failure function.
fn smallest_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    const A: Letter = Letter::pos(Generator::A);
    const AI: Letter = Letter::neg(Generator::A);
    const SI: Letter = Letter::neg(Generator::S);

    #[test]
    fn parses_uppercase_as_inverse() {
        assert_eq!(w("SaS").letters(), &[SI, A, SI]);
    }

    #[test]
    fn negative_exponent_expands() {
        assert_eq!(w("a^-3").letters(), &[AI, AI, AI]);
        assert_eq!(w("A^2"), w("a^-2"));
        assert_eq!(w("A^-1"), w("a"));
    }

    #[test]
    fn empty_and_whitespace() {
        assert!(w("").is_empty());
        assert!(w("  \t\n").is_empty());
        assert_eq!(w(" a  b^2 "), w("abb"));
        assert!(parse_word("b ^2").is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_word("ab x").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_word("a^").unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_word("a^-").unwrap_err();
        assert_eq!(e.position, 1);
        assert!(parse_word("^2").is_err());
        assert!(parse_word("θ").is_err());
    }

    #[test]
    fn free_reduction() {
        assert!(w("aA").free_reduce().is_empty());
        assert!(w("S a A s").free_reduce().is_empty());
        assert_eq!(w("a b B a").free_reduce(), w("a a"));
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("h a H h").exponent_sum(Generator::Theta), 1);
        assert_eq!(w("bbb").exponent_sum(Generator::B), 3);
        assert_eq!(w("S a s T a t").exponent_sum(Generator::S), 0);
    }

    #[test]
    fn display_compresses_runs() {
        assert_eq!(w("aab").to_string(), "a^2 b");
        assert_eq!(w("h^8").to_string(), "h^8");
        assert_eq!(w("AAs").to_string(), "A^2 s");
        assert_eq!(Word::empty().to_string(), "");
    }

    #[test]
    fn max_root_examples() {
        let r = max_root(&w("ahah")).unwrap();
        assert_eq!((r.root, r.multiplicity), (w("ah"), 2));
        let r = max_root(&w("ah")).unwrap();
        assert_eq!((r.root, r.multiplicity), (w("ah"), 1));
        let r = max_root(&w("a h h A")).unwrap();
        assert_eq!((r.root.clone(), r.multiplicity), (w("a h A"), 2));
        assert_eq!(r.root.pow(2).free_reduce(), w("a h h A"));
    }

    #[test]
    fn max_root_rejects_bad_input() {
        assert_eq!(max_root(&w("")), Err(Error::EmptyWord));
        assert_eq!(max_root(&w("aA")), Err(Error::EmptyWord));
        assert_eq!(max_root(&w("ab")), Err(Error::ForeignLetter(Generator::B)));
    }

    #[test]
    fn non_power_keeps_whole_word() {
        let r = max_root(&w("a a h")).unwrap();
        assert_eq!(r.multiplicity, 1);
        assert_eq!(r.root, w("a a h"));
    }
}
