//! Test-side oracles written independently of the library's algorithms.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use permcount_core::index::CellIndex;

/// Heap's algorithm, visiting every permutation of `0..n` (0-based images).
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Point constraints `a -> x` carried by a cell, 1-based.
fn constraints(cell: &CellIndex) -> Vec<(usize, usize)> {
    let (i, j, k, l) = (cell.domain.i, cell.domain.j, cell.image.k, cell.image.l);
    if i == j {
        vec![(i, k), (i, l)]
    } else {
        vec![(i, k), (j, l)]
    }
}

/// Number of permutations of `[n]` meeting the constraints of both cells.
pub fn count_by_enumeration(n: usize, row: &CellIndex, col: &CellIndex) -> u64 {
    let all: Vec<(usize, usize)> = constraints(row).into_iter().chain(constraints(col)).collect();
    let mut count = 0;
    for_each_permutation(n, |p| {
        if all.iter().all(|&(a, x)| p[a - 1] + 1 == x) {
            count += 1;
        }
    });
    count
}

/// Rank over Q by textbook Gaussian elimination on rationals.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / &rows[rank][c];
        let pivot: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

pub fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// `(lambda, multiplicity)` per family, evaluated directly from the formulas.
pub fn claimed_spectrum(n: usize) -> [(BigInt, usize); 4] {
    let c = binom(n - 1, 2);
    [
        (factorial(n) * 3 / 2, 1),
        (factorial(n - 3) * n, c * c),
        (factorial(n - 4) * ((n - 1) * (n - 2)), (c - 1) * (c - 1)),
        (factorial(n - 2) * (2 * n), (n - 1) * (n - 1)),
    ]
}
