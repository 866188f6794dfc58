use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::freealg::{NcPoly, Word};
use crate::linalg::{Echelon, SparseRow};
use crate::nodal::{basis_words_up_to, NodalAlgebra};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum UnitsOutcome {
    /// `f · inverse = 1`; `two_sided` records whether `inverse · f = 1` too.
    Invertible { inverse: NcPoly, two_sided: bool },
    /// No right inverse supported on basis words of length `<= max_len`.
    NoInverseWithinBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitsReport {
    pub element: NcPoly,
    pub max_len: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub outcome: UnitsOutcome,
    pub scope: &'static str,
}

impl UnitsReport {
    pub fn is_invertible(&self) -> bool {
        matches!(self.outcome, UnitsOutcome::Invertible { .. })
    }
}

const SCOPE: &str = "bounded search: solves f*u = 1 exactly for u supported on basis words up to max_len; \
     a negative verdict is evidence, not proof, of non-invertibility";

/// Solves `f · u = 1` for `u` in the span of basis words of length at most
/// `max_len`, as an exact linear system.
pub fn units_bounded_check(alg: &NodalAlgebra, f: &NcPoly, max_len: usize) -> Result<UnitsReport> {
    let f = alg.nf(f)?;
    let support = basis_words_up_to(max_len);
    // equation per output word: Σ_w [v](f·w) u_w = δ_{v,1}
    let mut rows: BTreeMap<Word, SparseRow> = BTreeMap::new();
    for (col, w) in support.iter().enumerate() {
        let product = alg.mul(&f, &NcPoly::word(w.clone()))?;
        for (v, c) in product.terms() {
            rows.entry(v.clone()).or_default().insert(col, c.clone());
        }
    }
    rows.entry(Word::empty()).or_default();
    let equations = rows.len();
    let mut echelon = Echelon::new();
    for (v, row) in rows {
        let rhs = if v.is_empty() { Scalar::one() } else { Scalar::zero() };
        echelon.push(row, rhs)?;
    }
    let outcome = match echelon.solve(support.len()) {
        None => UnitsOutcome::NoInverseWithinBound,
        Some(x) => {
            let inverse = NcPoly::from_terms(x.into_iter().zip(support.iter().cloned()));
            debug_assert_eq!(alg.mul(&f, &inverse)?, NcPoly::one());
            let two_sided = alg.mul(&inverse, &f)? == NcPoly::one();
            UnitsOutcome::Invertible { inverse, two_sided }
        }
    };
    Ok(UnitsReport { element: f, max_len, unknowns: support.len(), equations, outcome, scope: SCOPE })
}
