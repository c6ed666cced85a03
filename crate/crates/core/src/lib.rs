//! Exact construction and spectral verification of the permutation-count
//! matrix `B` of size `(n^4 + n^2)/2`, whose entry at a pair of cells counts
//! the permutations of `[n]` satisfying all four point constraints.

pub mod arith;
pub mod error;
pub mod families;
pub mod index;
pub mod linalg;
pub mod matrix;
pub mod spectral;
pub mod vector;

pub use error::{Error, Result};
