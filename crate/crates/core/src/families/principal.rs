use num_traits::One;

use crate::arith::{ExactInt, ExactRational};
use crate::error::Result;
use crate::index::IndexSpace;
use crate::vector::ExactVector;

/// `n - 1` on every cell `((a,a),(x,x))`, `1` on every cell with distinct
/// domain points and distinct images, zero elsewhere.
pub fn principal_vector(n: usize) -> Result<ExactVector> {
    let space = IndexSpace::new(n)?;
    let heavy = ExactRational::from_integer(ExactInt::from(n - 1));
    let entries = space
        .cells()
        .iter()
        .map(|c| match (c.structural_support(), c.domain.is_singleton()) {
            (false, _) => ExactRational::default(),
            (true, true) => heavy.clone(),
            (true, false) => ExactRational::one(),
        })
        .collect();
    Ok(ExactVector::from_entries(entries))
}
