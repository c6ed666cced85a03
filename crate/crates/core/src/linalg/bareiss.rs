use num_traits::{Signed, Zero};

use crate::arith::ExactInt;
use crate::vector::ExactVector;

/// Rank over the rationals of a list of exact vectors. Each vector is scaled
/// to integers first, which does not change the rank.
pub fn rank_of_vectors(vectors: &[ExactVector]) -> usize {
    let rows: Vec<Vec<ExactInt>> = vectors.iter().map(|v| v.to_integer_parts().0).collect();
    rank_of_rows(rows)
}

/// Fraction-free (Bareiss) elimination. After `k` pivots every live entry is a
/// `(k+1)`-minor of the input, so the division by the previous pivot is exact.
/// The pivot is the largest-magnitude candidate in the column.
pub fn rank_of_rows(rows: Vec<Vec<ExactInt>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    assert!(rows.iter().all(|r| r.len() == width), "ragged rows");
    // drop identically zero columns up front
    let live: Vec<usize> = (0..width)
        .filter(|&c| rows.iter().any(|r| !r[c].is_zero()))
        .collect();
    let mut a: Vec<Vec<ExactInt>> = rows
        .into_iter()
        .map(|r| live.iter().map(|&c| r[c].clone()).collect())
        .filter(|r: &Vec<ExactInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let m = a.len();
    let cols = live.len();
    let mut prev = ExactInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == m {
            break;
        }
        let pivot = (rank..m)
            .filter(|&i| !a[i][col].is_zero())
            .max_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()).then(y.cmp(&x)));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[col];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for c in col + 1..cols {
                let updated = if factor.is_zero() {
                    pv * &row[c]
                } else {
                    pv * &row[c] - &factor * &prow[c]
                };
                row[c] = if updated.is_zero() { updated } else { updated / &prev };
            }
        }
        prev = head[rank][col].clone();
        rank += 1;
    }
    rank
}
