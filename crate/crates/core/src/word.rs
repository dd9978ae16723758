//! Letters and words over the generators `x1, ..., xg` of the surface group.

use std::fmt;
use std::str::FromStr;

use crate::error::McgError;

/// A signed generator `x_i^{±1}`. Stored as a nonzero `i16`: `i` for `x_i`, `-i` for `x_i^{-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i16);

impl Letter {
    pub fn new(index: usize, positive: bool) -> Letter {
        assert!(index >= 1 && index <= i16::MAX as usize, "generator index out of range");
        let i = index as i16;
        Letter(if positive { i } else { -i })
    }

    /// `x_i`
    pub fn pos(index: usize) -> Letter {
        Letter::new(index, true)
    }

    /// `x_i^{-1}`
    pub fn neg(index: usize) -> Letter {
        Letter::new(index, false)
    }

    /// Builds a letter from its signed code (`3` is `x3`, `-3` is `x3^-1`).
    pub fn from_code(code: i16) -> Letter {
        assert!(code != 0, "letter code must be nonzero");
        Letter(code)
    }

    pub fn code(self) -> i16 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.index())
        } else {
            write!(f, "x{}^-1", self.index())
        }
    }
}

/// A finite sequence of letters. Not necessarily reduced; see [`free_reduce`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// Shorthand for tests and fixed formulas: `Word::from_codes(&[1, 1, -2])` is `x1 x1 x2^-1`.
    pub fn from_codes(codes: &[i16]) -> Word {
        Word(codes.iter().map(|&c| Letter::from_code(c)).collect())
    }

    pub fn letter(index: usize) -> Word {
        Word(vec![Letter::pos(index)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn codes(&self) -> Vec<i16> {
        self.0.iter().map(|l| l.code()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Freely reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        free_reduce(&self.concat(other))
    }

    /// `c · self · c^{-1}`, freely reduced.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        free_reduce(&c.concat(self).concat(&c.inverse()))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        free_reduce(&Word(v))
    }

    /// Cyclic rotation: `rotate(k)` of `a0 a1 ... a(n-1)` is `ak ... a(n-1) a0 ... a(k-1)`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// Exponent sum of each generator, `result[i-1]` for `x_i`.
    pub fn exponent_vector(&self, genus: usize) -> Vec<i64> {
        let mut v = vec![0i64; genus];
        for l in &self.0 {
            v[l.index() - 1] += l.sign();
        }
        v
    }

    /// Orientation character: every `x_i` is one-sided, so this is the parity of the length.
    pub fn is_two_sided(&self) -> bool {
        self.len() % 2 == 0
    }

    /// True when `self` is a rotation of `other` (as cyclic words).
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let n = self.len();
        (0..n).any(|k| (0..n).all(|j| self.0[j] == other.0[(j + k) % n]))
    }

    /// Lexicographically least rotation (by letter code).
    pub fn least_rotation(&self) -> Word {
        (0..self.len().max(1))
            .map(|k| self.rotate(k))
            .min()
            .unwrap_or_default()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// Parses the [`Display`](fmt::Display) format: space-separated `x3`, `x3^-1`; `1` is the empty word.
impl FromStr for Word {
    type Err = McgError;

    fn from_str(s: &str) -> Result<Word, McgError> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || McgError::Parse(format!("bad letter `{}`", tok));
            let body = tok.strip_prefix('x').ok_or_else(bad)?;
            let (idx, positive) = match body.strip_suffix("^-1") {
                Some(i) => (i, false),
                None => (body, true),
            };
            let index: usize = idx.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            letters.push(Letter::new(index, positive));
        }
        Ok(Word(letters))
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = McgError;

    fn try_from(s: String) -> Result<Word, McgError> {
        s.parse()
    }
}
