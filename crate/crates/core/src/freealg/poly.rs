use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Letter, Word};
use crate::scalar::Scalar;

/// A finite linear combination of words with nonzero coefficients in `Q(r)`.
///
/// Products are taken in the free algebra; reduction modulo relations lives
/// in [`crate::rewrite`].
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn one() -> NcPoly {
        NcPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> NcPoly {
        NcPoly::term(c, Word::empty())
    }

    pub fn term(c: Scalar, word: Word) -> NcPoly {
        let mut p = NcPoly::zero();
        p.add_term(word, c);
        p
    }

    pub fn word(word: Word) -> NcPoly {
        NcPoly::term(Scalar::one(), word)
    }

    pub fn letter(l: Letter) -> NcPoly {
        NcPoly::word(Word::letter(l))
    }

    pub fn from_terms<I: IntoIterator<Item = (Scalar, Word)>>(iter: I) -> NcPoly {
        let mut p = NcPoly::zero();
        for (c, w) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn contains_word(&self, word: &Word) -> bool {
        self.terms.contains_key(word)
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn remove(&mut self, word: &Word) -> Option<Scalar> {
        self.terms.remove(word)
    }

    pub fn pop_last(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    pub fn pop_first(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_first()
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &NcPoly) {
        if c.is_zero() {
            return;
        }
        for (w, d) in other.terms() {
            self.add_term(w.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, d)| (w.clone(), c * d)).collect() }
    }

    /// The free (unreduced) product.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, c) in self.terms() {
            for (v, d) in other.terms() {
                out.add_term(u.concat(v), c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> NcPoly {
        (0..n).fold(NcPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in self.terms() {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// The constant term if the polynomial is a scalar multiple of `1`.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }
}

impl From<Scalar> for NcPoly {
    fn from(c: Scalar) -> Self {
        NcPoly::constant(c)
    }
}

impl From<Word> for NcPoly {
    fn from(w: Word) -> Self {
        NcPoly::word(w)
    }
}

impl Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        NcPoly::mul(self, rhs)
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-Scalar::one())
    }
}

macro_rules! poly_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for NcPoly {
            type Output = NcPoly;
            fn $method(self, rhs: NcPoly) -> NcPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_owned_binop!(Add, add);
poly_owned_binop!(Sub, sub);

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

/// Writes a signed term list in descending word order, e.g.
/// `-a*x*a^-2 - x*a^-1 - a^-1 + 10`. `item` renders one monomial.
pub(crate) fn write_terms<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a Scalar)>,
    is_unit: impl Fn(&K) -> bool,
    item: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (key, c) in terms {
        let single_negative = (c.c1.is_zero() && c.c0.is_negative()) || (c.c0.is_zero() && c.c1.is_negative());
        let (negative, mag) = if single_negative {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        first = false;
        if is_unit(key) {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{}", item(key))?;
        } else {
            write!(f, "{mag}*{}", item(key))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev(), |w| w.is_empty(), |w| w.to_string())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    coeff: Scalar,
    word: Word,
}

impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            self.terms.iter().map(|(w, c)| TermWire { coeff: c.clone(), word: w.clone() }),
        )
    }
}

impl<'de> Deserialize<'de> for NcPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermWire>::deserialize(d)?;
        Ok(NcPoly::from_terms(terms.into_iter().map(|t| (t.coeff, t.word))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::w;

    fn p(terms: &[(i64, &str)]) -> NcPoly {
        NcPoly::from_terms(terms.iter().map(|&(c, s)| (Scalar::from(c), w(s))))
    }

    #[test]
    fn addition_cancels() {
        assert_eq!(&p(&[(1, "x"), (1, "a")]) + &p(&[(-1, "a")]), p(&[(1, "x")]));
    }

    #[test]
    fn scaling_by_zero_is_zero() {
        assert!(p(&[(1, "x"), (1, "y")]).scale(&Scalar::zero()).is_zero());
        assert_eq!(&p(&[(2, "x")]) + &p(&[(3, "x")]), p(&[(5, "x")]));
    }

    #[test]
    fn free_product_keeps_order() {
        assert_eq!(p(&[(1, "x")]).mul(&p(&[(1, "y")])), p(&[(1, "xy")]));
        assert_ne!(p(&[(1, "y")]).mul(&p(&[(1, "x")])), p(&[(1, "xy")]));
        assert_eq!(
            p(&[(1, "x"), (1, "a")]).mul(&p(&[(1, "b")])),
            p(&[(1, "xb"), (1, "ab")])
        );
    }

    #[test]
    fn display_descending() {
        let f = p(&[(-1, "xg"), (-1, "axgg"), (-1, "g"), (10, "")]);
        assert_eq!(f.to_string(), "-a*x*a^-2 - x*a^-1 - a^-1 + 10");
        assert_eq!(NcPoly::zero().to_string(), "0");
        let g = NcPoly::term(Scalar::root(), w("x"));
        assert_eq!(g.to_string(), "r*x");
    }

    #[test]
    fn json_shape() {
        let f = p(&[(2, "ag")]);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"[{"coeff":{"c0":"2/1","c1":"0/1"},"word":"ag"}]"#
        );
    }
}
