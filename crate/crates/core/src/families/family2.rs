use rayon::prelude::*;

use super::graphs::{unique_weighting, Skeleton, WeightMode, WeightedGraphPair};
use super::{Family, FamilyVector};
use crate::error::{Error, Result};
use crate::index::{check_size, IndexSpace};
use crate::vector::ExactVector;

/// Triangle pair on `{1, alpha, beta}` and `{1, gamma, delta}`. The G1 weights
/// are the signed-balance solution `w(1,alpha) = w(alpha,beta) = 1`,
/// `w(1,beta) = -1`; G2 carries the circulation `1 -> gamma -> delta -> 1`.
pub fn family2_pair(n: usize, alpha: usize, beta: usize, gamma: usize, delta: usize) -> Result<WeightedGraphPair> {
    check_size(n)?;
    let ordered = |lo: usize, hi: usize| 2 <= lo && lo < hi && hi <= n;
    if !ordered(alpha, beta) || !ordered(gamma, delta) {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= alpha < beta <= n and 2 <= gamma < delta <= n, got ({alpha},{beta},{gamma},{delta}) for n={n}"
        )));
    }
    let g1 = Skeleton::cycle(&[1, alpha, beta])?;
    let g2 = Skeleton::cycle(&[1, gamma, delta])?;
    let w1 = unique_weighting(&g1, WeightMode::Skew)?;
    let w2 = unique_weighting(&g2, WeightMode::Skew)?;
    Ok(WeightedGraphPair::from_weights(WeightMode::Skew, &g1, &w1, &g2, &w2))
}

pub fn family2_vector(n: usize, alpha: usize, beta: usize, gamma: usize, delta: usize) -> Result<ExactVector> {
    let space = IndexSpace::new(n)?;
    family2_pair(n, alpha, beta, gamma, delta)?.to_vector(&space)
}

/// All `C(n-1,2)^2` vectors, ordered lexicographically in `(alpha, beta, gamma, delta)`.
pub fn family2_basis(n: usize) -> Result<Vec<FamilyVector>> {
    let space = IndexSpace::new(n)?;
    let pairs: Vec<(usize, usize)> = (2..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let params: Vec<(usize, usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(a, b)| pairs.iter().map(move |&(g, d)| (a, b, g, d)))
        .collect();
    params
        .into_par_iter()
        .map(|(a, b, g, d)| {
            let vector = family2_pair(n, a, b, g, d)?.to_vector(&space)?;
            Ok(FamilyVector {
                family: Family::Skew,
                params: format!("alpha={a},beta={b},gamma={g},delta={d}"),
                vector,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::index::CellIndex;

    #[test]
    fn parameter_checks() {
        assert!(family2_pair(5, 3, 2, 2, 3).is_err());
        assert!(family2_pair(5, 1, 2, 2, 3).is_err());
        assert!(family2_pair(5, 2, 6, 2, 3).is_err());
        assert!(family2_pair(3, 2, 3, 2, 3).is_err());
    }

    #[test]
    fn weights_and_support() {
        let pair = family2_pair(5, 2, 3, 2, 3).unwrap();
        pair.check_axioms().unwrap();
        assert_eq!(pair.e1[&(1, 2)], 1);
        assert_eq!(pair.e1[&(2, 3)], 1);
        assert_eq!(pair.e1[&(1, 3)], -1);
        assert_eq!(pair.e2[&(1, 2)], int(1));
        assert_eq!(pair.e2[&(2, 3)], int(1));
        assert_eq!(pair.e2[&(3, 1)], int(1));
        assert_eq!(pair.e2[&(2, 1)], int(-1));
        let v = family2_vector(5, 2, 3, 2, 3).unwrap();
        assert_eq!(v.nnz(), 18);
    }

    #[test]
    fn distinguished_cell_is_unique_to_each_vector() {
        for n in 4..=6 {
            let space = IndexSpace::new(n).unwrap();
            let basis = family2_basis(n).unwrap();
            assert_eq!(basis.len(), Family::Skew.multiplicity(n));
            for (t, fv) in basis.iter().enumerate() {
                let nums: Vec<usize> = fv
                    .params
                    .split(',')
                    .map(|kv| kv.split_once('=').unwrap().1.parse().unwrap())
                    .collect();
                let cell = CellIndex::new(nums[0], nums[1], nums[2], nums[3]);
                let o = space.encode(&cell).unwrap();
                assert_ne!(fv.vector[o], int(0));
                for (u, other) in basis.iter().enumerate() {
                    if u != t {
                        assert_eq!(other.vector[o], int(0), "n={n} {} vs {}", fv.params, other.params);
                    }
                }
            }
        }
    }
}
