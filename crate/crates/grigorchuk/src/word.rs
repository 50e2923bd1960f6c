//! Words over the generators `a, b, c, d` and binary strings.
//!
//! Every generator is an involution, so the inverse of a word is its
//! reversal and no separate inverse letters are needed.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One of the four generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];
    /// The three letters of the Klein group `{1, b, c, d}`.
    pub const BCD: [Gen; 3] = [Gen::B, Gen::C, Gen::D];

    pub fn from_char(ch: char) -> Option<Gen> {
        match ch {
            'a' => Some(Gen::A),
            'b' => Some(Gen::B),
            'c' => Some(Gen::C),
            'd' => Some(Gen::D),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Rank in the tie-break order `a < d < c < b` used for minimal forms.
    pub fn rank(self) -> u8 {
        match self {
            Gen::A => 0,
            Gen::D => 1,
            Gen::C => 2,
            Gen::B => 3,
        }
    }

    /// For two distinct letters of `{b,c,d}`, the third one.
    pub fn third(self, other: Gen) -> Gen {
        debug_assert!(self != Gen::A && other != Gen::A && self != other);
        match (self as u8) ^ (other as u8) {
            1 => Gen::B,
            2 => Gen::C,
            _ => Gen::D,
        }
    }
}

/// A finite word over `{a,b,c,d}`. The empty word is rendered `-`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_gens(gens: &[Gen]) -> Word {
        Word(gens.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Inverse in the group: the reversed word.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    pub fn push(&mut self, g: Gen) {
        self.0.push(g);
    }

    /// Parse a word; `-`, `λ` and the empty string denote the empty word.
    pub fn parse(s: &str) -> Result<Word, Error> {
        let s = s.trim();
        if s == "-" || s == "λ" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|ch| Gen::from_char(ch).ok_or_else(|| Error::Parse(format!("bad letter {ch:?} in word {s:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Key for the tie-break order: length first, then letters under `a < d < c < b`.
    pub fn order_key(&self) -> (usize, Vec<u8>) {
        (self.len(), self.0.iter().map(|g| g.rank()).collect())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word, Error> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for g in &self.0 {
            write!(f, "{}", g.to_char())?;
        }
        Ok(())
    }
}

/// Shorthand used throughout the tests: `w("abad")`. Panics on bad letters.
pub fn w(s: &str) -> Word {
    Word::parse(s).expect("valid word literal")
}

/// A pair of words, e.g. the two sections of an element of `H`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairWord(pub Word, pub Word);

impl PairWord {
    pub fn new(first: Word, second: Word) -> PairWord {
        PairWord(first, second)
    }

    pub fn swapped(&self) -> PairWord {
        PairWord(self.1.clone(), self.0.clone())
    }

    pub fn get(&self, i: usize) -> &Word {
        if i == 0 {
            &self.0
        } else {
            &self.1
        }
    }

    /// Parse `(u0,u1)`.
    pub fn parse(s: &str) -> Result<PairWord, Error> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (u0,u1), got {t:?}")))?;
        let (l, r) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected a comma in {t:?}")))?;
        Ok(PairWord(Word::parse(l)?, Word::parse(r)?))
    }
}

impl fmt::Display for PairWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// A finite string over `{0,1}`, i.e. a vertex of the binary tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BinaryString(pub Vec<bool>);

impl BinaryString {
    pub fn parse(s: &str) -> Result<BinaryString, Error> {
        s.trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad bit {ch:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryString)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All strings of length `n`, in binary counting order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = BinaryString> {
        (0u64..(1u64 << n)).map(move |k| BinaryString((0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect()))
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for PairWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(w("abad").to_string(), "abad");
        assert_eq!(Word::parse("-").unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "-");
        assert!(Word::parse("abx").is_err());
        let p = PairWord::parse("(da,-)").unwrap();
        assert_eq!(p, PairWord(w("da"), Word::empty()));
        assert_eq!(p.to_string(), "(da,-)");
    }

    #[test]
    fn third_letter() {
        assert_eq!(Gen::B.third(Gen::C), Gen::D);
        assert_eq!(Gen::C.third(Gen::D), Gen::B);
        assert_eq!(Gen::D.third(Gen::B), Gen::C);
    }

    #[test]
    fn order_key_prefers_d_before_c() {
        assert!(w("adad").order_key() < w("dada").order_key());
        assert!(w("da").order_key() < w("ca").order_key());
        assert!(w("d").order_key() < w("aa").order_key());
    }

    #[test]
    fn binary_strings_enumerate() {
        let all: Vec<String> = BinaryString::all_of_len(2).map(|s| s.to_string()).collect();
        assert_eq!(all, vec!["00", "01", "10", "11"]);
    }
}
