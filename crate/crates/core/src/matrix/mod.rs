//! Exact symmetric sparse storage for B, plus construction and text I/O.

mod build;
mod constraints;
mod io;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{ExactInt, ExactRational, Factorials};
use crate::error::{Error, Result};
use crate::index::{index_count, CellIndex, IndexSpace};
use crate::vector::ExactVector;

pub use build::{build_matrix, entry_closed_form, perm_count_oracle, BuildMethod, BRUTE_FORCE_MAX_N};
pub use constraints::ConstraintSet;
pub use io::{export_triplets, import_triplets};

/// Upper-triangle sparse storage of a symmetric integer matrix over the index
/// space of size `n`. Stored values are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymSparseMatrix {
    n: usize,
    dim: usize,
    entries: BTreeMap<(usize, usize), ExactInt>,
}

impl SymSparseMatrix {
    pub(crate) fn from_entries(n: usize, entries: BTreeMap<(usize, usize), ExactInt>) -> Result<Self> {
        let dim = index_count(n)?;
        debug_assert!(entries.iter().all(|(&(r, c), v)| r <= c && c < dim && !v.is_zero()));
        Ok(Self { n, dim, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (upper-triangle) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ExactInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn get(&self, row: usize, col: usize) -> ExactInt {
        let key = (row.min(col), row.max(col));
        self.entries.get(&key).cloned().unwrap_or_else(ExactInt::zero)
    }

    /// The nonzero values B may legally hold: `(n-4)!, (n-3)!, (n-2)!, (n-1)!`.
    pub fn admissible_values(n: usize) -> [ExactInt; 4] {
        let f = Factorials::up_to(n);
        [
            f.get(n - 4).clone(),
            f.get(n - 3).clone(),
            f.get(n - 2).clone(),
            f.get(n - 1).clone(),
        ]
    }

    /// Full row as `(col, value)` pairs in ascending column order.
    pub fn row(&self, row: usize) -> Vec<(usize, ExactInt)> {
        let mut out: Vec<(usize, ExactInt)> = self
            .entries
            .iter()
            .filter(|(&(r, c), _)| c == row && r != row)
            .map(|(&(r, _), v)| (r, v.clone()))
            .collect();
        out.extend(
            self.entries
                .range((row, 0)..(row + 1, 0))
                .map(|(&(_, c), v)| (c, v.clone())),
        );
        out
    }

    pub fn row_sum(&self, row: usize) -> ExactInt {
        self.row(row).into_iter().map(|(_, v)| v).sum()
    }

    /// Every row sum in one pass over the stored triangle.
    pub fn row_sums(&self) -> Vec<ExactInt> {
        let mut sums = vec![ExactInt::zero(); self.dim];
        for (&(r, c), v) in &self.entries {
            sums[r] += v;
            if r != c {
                sums[c] += v;
            }
        }
        sums
    }

    pub fn trace(&self) -> ExactInt {
        self.entries
            .iter()
            .filter(|(&(r, c), _)| r == c)
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// Sum of squares of all entries of the full matrix, i.e. `tr(B^T B)`.
    pub fn sum_of_squares(&self) -> ExactInt {
        self.entries.iter().fold(ExactInt::zero(), |acc, (&(r, c), v)| {
            let sq = v * v;
            if r == c {
                acc + sq
            } else {
                acc + sq * 2
            }
        })
    }

    /// Exact product `B v`. Each stored off-diagonal entry contributes to both
    /// mirror positions.
    pub fn matvec(&self, v: &ExactVector) -> Result<ExactVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        let (ints, den) = v.to_integer_parts();
        let mut out = vec![ExactInt::zero(); self.dim];
        for (&(r, c), value) in &self.entries {
            if !ints[c].is_zero() {
                out[r] += value * &ints[c];
            }
            if r != c && !ints[r].is_zero() {
                out[c] += value * &ints[r];
            }
        }
        let entries = if den.is_one() {
            out.into_iter().map(ExactRational::from_integer).collect()
        } else {
            out.into_iter()
                .map(|x| ExactRational::new(x, den.clone()))
                .collect()
        };
        Ok(ExactVector::from_entries(entries))
    }

    /// Checks symmetry-free storage invariants: every value nonzero and one of
    /// the admissible factorials.
    pub fn validate_values(&self) -> Result<()> {
        let allowed = Self::admissible_values(self.n);
        for (&(r, c), v) in &self.entries {
            if !allowed.contains(v) {
                return Err(Error::InvalidParameters(format!(
                    "entry ({r}, {c}) = {v} is not an admissible permutation count"
                )));
            }
        }
        Ok(())
    }

    pub fn space(&self) -> IndexSpace {
        IndexSpace::new(self.n).expect("matrix size validated at construction")
    }

    pub fn cell_row_sum(&self, space: &IndexSpace, cell: &CellIndex) -> Result<ExactInt> {
        Ok(self.row_sum(space.encode(cell)?))
    }
}
