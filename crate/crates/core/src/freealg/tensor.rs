use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use super::poly::{write_terms, NcPoly};
use super::word::Word;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Legs = SmallVec<[Word; 3]>;

/// An element of `A^{⊗k}` for `k` in `1..=3`, stored as a combination of
/// word tuples. The tensor product is the ordinary one: no signs.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorPoly {
    arity: usize,
    terms: BTreeMap<Legs, Scalar>,
}

impl TensorPoly {
    pub const MAX_ARITY: usize = 3;

    pub fn zero(arity: usize) -> TensorPoly {
        assert!((1..=Self::MAX_ARITY).contains(&arity), "tensor arity {arity} out of range");
        TensorPoly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> TensorPoly {
        let mut t = TensorPoly::zero(arity);
        t.add_term(std::iter::repeat(Word::empty()).take(arity).collect(), Scalar::one());
        t
    }

    /// `f_1 ⊗ f_2 ⊗ ...` expanded multilinearly.
    pub fn pure(factors: &[&NcPoly]) -> TensorPoly {
        let mut acc = TensorPoly::zero(1);
        acc.terms.insert(Legs::new(), Scalar::one());
        for (k, f) in factors.iter().enumerate() {
            let mut next = BTreeMap::new();
            for (legs, c) in &acc.terms {
                for (w, d) in f.terms() {
                    let mut l = legs.clone();
                    l.push(w.clone());
                    accumulate(&mut next, l, c * d);
                }
            }
            acc = TensorPoly { arity: k + 1, terms: next };
        }
        acc.arity = factors.len();
        acc
    }

    pub fn from_nc(f: &NcPoly) -> TensorPoly {
        TensorPoly::pure(&[f])
    }

    /// Inverse of [`TensorPoly::from_nc`] for arity 1.
    pub fn to_nc(&self) -> Option<NcPoly> {
        (self.arity == 1)
            .then(|| NcPoly::from_terms(self.terms.iter().map(|(l, c)| (c.clone(), l[0].clone()))))
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn terms(&self) -> impl Iterator<Item = (&Legs, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, legs: Legs, c: Scalar) {
        assert_eq!(legs.len(), self.arity, "tensor term arity");
        accumulate(&mut self.terms, legs, c);
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &TensorPoly) -> Result<()> {
        self.check_arity(other)?;
        for (l, d) in other.terms() {
            accumulate(&mut self.terms, l.clone(), c * d);
        }
        Ok(())
    }

    pub fn sub(&self, other: &TensorPoly) -> Result<TensorPoly> {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly {
        let mut out = TensorPoly::zero(self.arity);
        for (l, d) in self.terms() {
            accumulate(&mut out.terms, l.clone(), c * d);
        }
        out
    }

    /// Componentwise product `(u_1⊗…⊗u_k)(v_1⊗…⊗v_k) = u_1v_1⊗…⊗u_kv_k`.
    pub fn mul(&self, other: &TensorPoly) -> Result<TensorPoly> {
        self.check_arity(other)?;
        let mut out = TensorPoly::zero(self.arity);
        for (u, c) in self.terms() {
            for (v, d) in other.terms() {
                let legs = u.iter().zip(v.iter()).map(|(a, b)| a.concat(b)).collect();
                accumulate(&mut out.terms, legs, c * d);
            }
        }
        Ok(out)
    }

    /// Replaces every leg by a polynomial image, expanding multilinearly.
    /// Used to reduce legs to normal form.
    pub fn map_legs<F>(&self, mut leg_map: F) -> Result<TensorPoly>
    where
        F: FnMut(usize, &Word) -> Result<NcPoly>,
    {
        let mut out = TensorPoly::zero(self.arity);
        for (legs, c) in self.terms() {
            let images = legs
                .iter()
                .enumerate()
                .map(|(k, w)| leg_map(k, w))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&NcPoly> = images.iter().collect();
            for (l, d) in TensorPoly::pure(&refs).terms() {
                accumulate(&mut out.terms, l.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// Replaces leg `k` by a tensor of arity `m`, raising the arity by
    /// `m - 1`. This realises maps like `Δ ⊗ id`.
    pub fn expand_leg<F>(&self, k: usize, mut leg_map: F) -> Result<TensorPoly>
    where
        F: FnMut(&Word) -> Result<TensorPoly>,
    {
        assert!(k < self.arity);
        let mut out: Option<TensorPoly> = None;
        for (legs, c) in self.terms() {
            let image = leg_map(&legs[k])?;
            let target = out.get_or_insert_with(|| TensorPoly::zero(self.arity - 1 + image.arity));
            if target.arity != self.arity - 1 + image.arity {
                return Err(Error::ArityMismatch {
                    left: target.arity,
                    right: self.arity - 1 + image.arity,
                });
            }
            for (inner, d) in image.terms() {
                let mut l = Legs::new();
                l.extend(legs[..k].iter().cloned());
                l.extend(inner.iter().cloned());
                l.extend(legs[k + 1..].iter().cloned());
                accumulate(&mut target.terms, l, c * d);
            }
        }
        Ok(out.unwrap_or_else(|| TensorPoly::zero(self.arity)))
    }

    /// Applies a scalar-valued functional to leg `k`, lowering the arity.
    pub fn contract_leg<F>(&self, k: usize, mut functional: F) -> TensorPoly
    where
        F: FnMut(&Word) -> Scalar,
    {
        assert!(k < self.arity && self.arity > 1);
        let mut out = TensorPoly::zero(self.arity - 1);
        for (legs, c) in self.terms() {
            let v = functional(&legs[k]);
            let l = legs.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, w)| w.clone()).collect();
            accumulate(&mut out.terms, l, c * &v);
        }
        out
    }

    /// Multiplies the legs together in order, giving an element of the free
    /// algebra.
    pub fn multiply_legs(&self) -> NcPoly {
        NcPoly::from_terms(self.terms().map(|(legs, c)| {
            let w = legs.iter().fold(Word::empty(), |acc, l| acc.concat(l));
            (c.clone(), w)
        }))
    }

    fn check_arity(&self, other: &TensorPoly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }
}

fn accumulate(terms: &mut BTreeMap<Legs, Scalar>, legs: Legs, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(legs) {
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

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |legs: &Legs| {
            legs.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ⊗ ")
        };
        let all_empty = |legs: &Legs| legs.iter().all(Word::is_empty);
        write_terms(f, self.terms.iter().rev(), |l| all_empty(l) && self.arity == 1, render)
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorPoly[{}]({self})", self.arity)
    }
}

#[derive(Serialize)]
struct TensorTermWire<'a> {
    coeff: &'a Scalar,
    words: &'a [Word],
}

impl Serialize for TensorPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(l, c)| TensorTermWire { coeff: c, words: l }))
    }
}
