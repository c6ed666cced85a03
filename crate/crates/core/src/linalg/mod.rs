//! Exact linear algebra: fraction-free elimination over the integers and
//! certified multi-modular rank and kernel computations.

mod bareiss;
mod modular;
mod primes;

pub use bareiss::{rank_of_rows, rank_of_vectors};
pub use modular::{certified_rank, kernel_basis, IntMatrix, RankCertificate};
pub use primes::PrimeStream;
