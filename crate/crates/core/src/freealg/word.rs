use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// One generator of the free algebra. `G` stands for `a^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    X = 0,
    Y = 1,
    A = 2,
    G = 3,
    B = 4,
}

impl Letter {
    pub const ALL: [Letter; 5] = [Letter::X, Letter::Y, Letter::A, Letter::G, Letter::B];

    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
            Letter::A => 'a',
            Letter::G => 'g',
            Letter::B => 'b',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        Some(match c {
            'x' => Letter::X,
            'y' => Letter::Y,
            'a' => Letter::A,
            'g' => Letter::G,
            'b' => Letter::B,
            _ => return None,
        })
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A monomial of the free algebra; the empty word is `1`.
///
/// Ordered by length first, then lexicographically with `x < y < a < g < b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(l: Letter) -> Word {
        Word::from_letters(&[l])
    }

    /// `l^n`.
    pub fn power(l: Letter, n: usize) -> Word {
        Word(std::iter::repeat(l).take(n).collect())
    }

    /// Parses the compact form, e.g. `"xyag"`. The empty string is `1`.
    pub fn parse(s: &str) -> Option<Word> {
        s.chars().map(Letter::from_symbol).collect::<Option<SmallVec<_>>>().map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// `prefix ++ middle ++ suffix` where `prefix = self[..start]` and
    /// `suffix = self[end..]`.
    pub fn splice(&self, start: usize, end: usize, middle: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.len() - (end - start) + middle.len());
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[end..]);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_letters(&self.0[start..end])
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Position of the first occurrence of `needle`.
    pub fn find(&self, needle: &Word) -> Option<usize> {
        if needle.is_empty() {
            return Some(0);
        }
        self.0.windows(needle.len()).position(|w| w == needle.letters())
    }

    pub fn contains(&self, needle: &Word) -> bool {
        self.find(needle).is_some()
    }

    pub fn starts_with_at(&self, at: usize, needle: &[Letter]) -> bool {
        self.0.len() >= at + needle.len() && &self.0[at..at + needle.len()] == needle
    }

    /// The compact letter string, `""` for the empty word.
    pub fn to_compact(&self) -> String {
        self.0.iter().map(|l| l.symbol()).collect()
    }

    /// Runs of equal letters as `(letter, count)`.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut out: Vec<(Letter, usize)> = Vec::new();
        for &l in self.0.iter() {
            match out.last_mut() {
                Some((last, n)) if *last == l => *n += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Human form: `x^2*y*a*x*a^-2*b`, with `1` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (k, (l, n)) in self.runs().into_iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            match (l, n) {
                (Letter::G, 1) => write!(f, "a^-1")?,
                (Letter::G, n) => write!(f, "a^-{n}")?,
                (l, 1) => write!(f, "{}", l.symbol())?,
                (l, n) => write!(f, "{}^{n}", l.symbol())?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self.to_compact())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_compact())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad word {s:?}")))
    }
}

/// Shorthand for building words in tests and examples; panics on letters
/// outside `xyagb`.
pub fn w(s: &str) -> Word {
    Word::parse(s).unwrap_or_else(|| panic!("not a word over xyagb: {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        assert!(w("b") < w("xx"));
        assert!(w("xy") < w("ya"));
        assert!(w("") < w("x"));
        assert!(w("ag") < w("ab"));
    }

    #[test]
    fn display_groups_runs() {
        assert_eq!(w("").to_string(), "1");
        assert_eq!(w("xxyaxggb").to_string(), "x^2*y*a*x*a^-2*b");
        assert_eq!(w("g").to_string(), "a^-1");
    }

    #[test]
    fn splice_and_find() {
        let word = w("xaaxb");
        assert_eq!(word.find(&w("aax")), Some(1));
        assert_eq!(word.splice(1, 4, &w("y")), w("xyb"));
        assert!(!word.contains(&w("bx")));
    }
}
