//! Sparse exact Gaussian elimination over `Q(r)`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::scalar::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Rows in echelon form keyed by pivot column; each stored row has its
/// pivot as smallest column with coefficient 1.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, (SparseRow, Scalar)>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Adds the equation `Σ row[k] u_k = rhs`.
    pub fn push(&mut self, mut row: SparseRow, mut rhs: Scalar) -> Result<()> {
        loop {
            let Some(col) = row.keys().copied().find(|k| self.pivots.contains_key(k)) else { break };
            let factor = row.remove(&col).expect("present");
            let (prow, prhs) = &self.pivots[&col];
            for (k, v) in prow {
                if *k == col {
                    continue;
                }
                let entry = row.entry(*k).or_default();
                *entry = &*entry - &(&factor * v);
                if entry.is_zero() {
                    row.remove(k);
                }
            }
            rhs = &rhs - &(&factor * prhs);
        }
        match row.keys().next().copied() {
            None => {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
            }
            Some(pivot) => {
                let inv = row[&pivot].inv()?;
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
                rhs = &rhs * &inv;
                self.pivots.insert(pivot, (row, rhs));
            }
        }
        Ok(())
    }

    /// A solution with every free variable set to zero, if one exists.
    pub fn solve(&self, unknowns: usize) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Scalar::zero(); unknowns];
        for (&pivot, (row, rhs)) in self.pivots.iter().rev() {
            let mut value = rhs.clone();
            for (&k, v) in row.range(pivot + 1..) {
                value = &value - &(v * &x[k]);
            }
            x[pivot] = value;
        }
        Some(x)
    }
}
