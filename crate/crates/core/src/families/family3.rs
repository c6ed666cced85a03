//! Symmetric-mode graph pairs.
//!
//! G1 ranges over three skeleton families on `[n]`, and G2 over the same
//! three on the image side:
//!
//! * `C(beta)`, `4 <= beta <= n`: the 4-cycle `1-2-3-beta-1`;
//! * `D(beta)`, `4 <= beta <= n`: the 4-cycle `1-3-2-beta-1`;
//! * `T(alpha.beta)`, `4 <= alpha < beta <= n`: edges `12, 13, 23, 1alpha,
//!   1beta, alpha beta`.
//!
//! That is `2(n-3) + C(n-3,2) = C(n-1,2) - 1` graphs per side. Edge `3beta`,
//! `2beta` and `alpha beta` respectively occurs in no other graph of the list,
//! so the product vectors are independent.

use rayon::prelude::*;

use super::graphs::{unique_weighting, Skeleton, WeightMode, WeightedGraphPair};
use super::{Family, FamilyVector};
use crate::error::{Error, Result};
use crate::index::{check_size, IndexSpace};
use crate::matrix::SymSparseMatrix;
use crate::spectral::{check_eigenvector, kernel_basis, KERNEL_MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family3Path {
    Recipe,
    Kernel,
}

#[derive(Debug, Clone)]
pub struct Family3Basis {
    pub path: Family3Path,
    pub vectors: Vec<FamilyVector>,
    /// Why the recipe path was abandoned, when it was.
    pub fallback_reason: Option<String>,
}

/// The labelled G1 (equivalently G2) skeletons in emission order.
pub fn family3_g1_skeletons(n: usize) -> Result<Vec<(String, Skeleton)>> {
    check_size(n)?;
    let mut out = Vec::new();
    for beta in 4..=n {
        out.push((format!("C({beta})"), Skeleton::cycle(&[1, 2, 3, beta])?));
    }
    for beta in 4..=n {
        out.push((format!("D({beta})"), Skeleton::cycle(&[1, 3, 2, beta])?));
    }
    for alpha in 4..=n {
        for beta in alpha + 1..=n {
            out.push((
                format!("T({alpha}.{beta})"),
                Skeleton::new(&[(1, 2), (1, 3), (2, 3), (1, alpha), (1, beta), (alpha, beta)])?,
            ));
        }
    }
    Ok(out)
}

/// Recipe vectors without eigen-verification, with their graph pairs.
pub fn family3_recipe(n: usize) -> Result<Vec<(WeightedGraphPair, FamilyVector)>> {
    let space = IndexSpace::new(n)?;
    let weighted: Vec<(String, Skeleton, Vec<i8>)> = family3_g1_skeletons(n)?
        .into_iter()
        .map(|(label, s)| {
            let w = unique_weighting(&s, WeightMode::Symmetric)?;
            Ok((label, s, w))
        })
        .collect::<Result<_>>()?;
    let combos: Vec<(usize, usize)> = (0..weighted.len())
        .flat_map(|a| (0..weighted.len()).map(move |b| (a, b)))
        .collect();
    combos
        .into_par_iter()
        .map(|(a, b)| {
            let (l1, g1, w1) = &weighted[a];
            let (l2, g2, w2) = &weighted[b];
            let pair = WeightedGraphPair::from_weights(WeightMode::Symmetric, g1, w1, g2, w2);
            let vector = pair.to_vector(&space)?;
            let fv = FamilyVector {
                family: Family::Symmetric,
                params: format!("g1={l1},g2={l2}"),
                vector,
            };
            Ok((pair, fv))
        })
        .collect()
}

fn verified_recipe(b: &SymSparseMatrix) -> Result<Vec<FamilyVector>> {
    let n = b.n();
    let lambda = Family::Symmetric.eigenvalue(n);
    let recipe = family3_recipe(n)?;
    let mut out = Vec::with_capacity(recipe.len());
    for (pair, fv) in recipe {
        pair.check_axioms()
            .map_err(|e| Error::ReconstructionFailed(format!("{}: {e}", fv.params)))?;
        if !check_eigenvector(b, &fv.vector, &lambda)? {
            return Err(Error::ReconstructionFailed(format!(
                "{} is not an eigenvector for {lambda}",
                fv.params
            )));
        }
        out.push(fv);
    }
    Ok(out)
}

/// Exact basis of the `(n-1)(n-2)(n-4)!` eigenspace taken from the kernel of
/// `B - lambda I`.
pub fn family3_kernel_basis(b: &SymSparseMatrix) -> Result<Vec<FamilyVector>> {
    let lambda = Family::Symmetric.eigenvalue(b.n());
    let basis = kernel_basis(b, &lambda)?;
    Ok(basis
        .into_iter()
        .enumerate()
        .map(|(k, vector)| FamilyVector {
            family: Family::Symmetric,
            params: format!("kernel={k}"),
            vector,
        })
        .collect())
}

/// Recipe vectors when every one verifies exactly; otherwise the exact kernel
/// basis (only available for `n <= KERNEL_MAX_N`).
pub fn family3_basis(b: &SymSparseMatrix) -> Result<Family3Basis> {
    match verified_recipe(b) {
        Ok(vectors) => Ok(Family3Basis {
            path: Family3Path::Recipe,
            vectors,
            fallback_reason: None,
        }),
        Err(Error::ReconstructionFailed(reason)) if b.n() <= KERNEL_MAX_N => Ok(Family3Basis {
            path: Family3Path::Kernel,
            vectors: family3_kernel_basis(b)?,
            fallback_reason: Some(reason),
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::index::CellIndex;

    #[test]
    fn skeleton_counts() {
        for n in 4..=8 {
            let c = crate::arith::binomial(n - 1, 2);
            assert_eq!(family3_g1_skeletons(n).unwrap().len(), c - 1);
        }
    }

    #[test]
    fn triangle_star_weights() {
        let sk = Skeleton::new(&[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)]).unwrap();
        // sorted edges: 12, 13, 14, 15, 23, 45
        assert_eq!(
            unique_weighting(&sk, WeightMode::Symmetric).unwrap(),
            vec![1, 1, -1, -1, -1, 1]
        );
    }

    #[test]
    fn recipe_pairs_satisfy_axioms_and_have_private_cells() {
        let n = 6;
        let space = IndexSpace::new(n).unwrap();
        let recipe = family3_recipe(n).unwrap();
        assert_eq!(recipe.len(), 81);
        for (pair, _) in &recipe {
            pair.check_axioms().unwrap();
        }
        // (3,5)(3,6) lives only in C(5) x C(6)
        let o = space.encode(&CellIndex::new(3, 5, 3, 6)).unwrap();
        let hits: Vec<&str> = recipe
            .iter()
            .filter(|(_, fv)| fv.vector[o] != int(0))
            .map(|(_, fv)| fv.params.as_str())
            .collect();
        assert_eq!(hits, vec!["g1=C(5),g2=C(6)"]);
    }
}
