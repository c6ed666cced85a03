//! The four explicit eigenvector families of B.

mod blocks;
mod family2;
mod family3;
mod graphs;
mod principal;

use serde::{Deserialize, Serialize};

use crate::arith::{factorial, ExactInt, ExactRational};
use crate::vector::{ExactVector, VectorHeader};

pub use blocks::{
    assemble_e, block_a1, block_a2, block_a3, family4_basis, sym_vectorize, BlockMatrix, Square,
};
pub use family2::{family2_basis, family2_pair, family2_vector};
pub use family3::{family3_basis, family3_g1_skeletons, family3_kernel_basis, family3_recipe, Family3Basis, Family3Path};
pub use graphs::{solve_weight_constraints, Skeleton, WeightMode, WeightedGraphPair, MAX_SKELETON_EDGES};
pub use principal::principal_vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Principal = 1,
    Skew = 2,
    Symmetric = 3,
    Block = 4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Principal, Family::Skew, Family::Symmetric, Family::Block];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(k: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.number() == k)
    }

    /// Eigenvalue carried by the family at size `n`:
    /// `3n!/2`, `n(n-3)!`, `(n-1)(n-2)(n-4)!` and `2n(n-2)!`.
    pub fn eigenvalue(self, n: usize) -> ExactRational {
        let v: ExactInt = match self {
            Family::Principal => factorial(n) * 3u32 / 2u32,
            Family::Skew => factorial(n - 3) * n,
            Family::Symmetric => factorial(n - 4) * ((n - 1) * (n - 2)),
            Family::Block => factorial(n - 2) * (2 * n),
        };
        ExactRational::from_integer(v)
    }

    /// Claimed eigenspace dimension: `1`, `C(n-1,2)^2`, `(C(n-1,2)-1)^2`, `(n-1)^2`.
    pub fn multiplicity(self, n: usize) -> usize {
        let c = crate::arith::binomial(n - 1, 2);
        match self {
            Family::Principal => 1,
            Family::Skew => c * c,
            Family::Symmetric => (c - 1) * (c - 1),
            Family::Block => (n - 1) * (n - 1),
        }
    }
}

/// A generated eigenvector with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVector {
    pub family: Family,
    pub params: String,
    pub vector: ExactVector,
}

impl FamilyVector {
    pub fn header(&self, n: usize) -> VectorHeader {
        VectorHeader {
            n,
            family: self.family.number(),
            lambda: self.family.eigenvalue(n),
            params: self.params.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn eigenvalues_at_small_n() {
        let l = |f: Family, n| f.eigenvalue(n);
        assert_eq!(l(Family::Principal, 4), int(36));
        assert_eq!(l(Family::Skew, 4), int(4));
        assert_eq!(l(Family::Symmetric, 4), int(6));
        assert_eq!(l(Family::Block, 4), int(16));
        assert_eq!(l(Family::Principal, 5), int(180));
        assert_eq!(l(Family::Skew, 5), int(10));
        assert_eq!(l(Family::Symmetric, 5), int(12));
        assert_eq!(l(Family::Block, 5), int(60));
    }

    #[test]
    fn symmetric_family_eigenvalue_equals_ratio_form() {
        for n in 4..=12 {
            let ratio = ExactRational::new(factorial(n - 1), ExactInt::from(n - 3));
            assert_eq!(Family::Symmetric.eigenvalue(n), ratio);
        }
    }

    #[test]
    fn multiplicities() {
        let m = |n| Family::ALL.map(|f| f.multiplicity(n));
        assert_eq!(m(4), [1, 9, 4, 9]);
        assert_eq!(m(5), [1, 36, 25, 16]);
        assert_eq!(m(6), [1, 100, 81, 25]);
        assert_eq!(m(7), [1, 225, 196, 36]);
    }

    #[test]
    fn eigenvalues_distinct_and_positive() {
        for n in 4..=12 {
            let ls = Family::ALL.map(|f| f.eigenvalue(n));
            for (a, x) in ls.iter().enumerate() {
                assert!(*x > int(0));
                for y in &ls[a + 1..] {
                    assert_ne!(x, y, "n={n}");
                }
            }
        }
    }
}
