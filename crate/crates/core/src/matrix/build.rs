use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ConstraintSet, SymSparseMatrix};
use crate::arith::{ExactInt, Factorials};
use crate::error::{Error, Result};
use crate::index::{check_size, CellIndex, IndexSpace};

/// Largest n for which all n! permutations are enumerated.
pub const BRUTE_FORCE_MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildMethod {
    ClosedForm,
    BruteForce,
}

fn check_budget(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::BudgetExceeded {
            what: "permutation enumeration",
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    Ok(())
}

/// `B(row, col)`: zero if the four constraints conflict, else `(n - c)!` with
/// `c` the number of distinct constrained points.
pub fn entry_closed_form(n: usize, row: &CellIndex, col: &CellIndex) -> Result<ExactInt> {
    for cell in [row, col] {
        if !cell.is_valid(n) {
            return Err(Error::InvalidCell { n, cell: *cell });
        }
    }
    Ok(closed_form_value(n, row, col, &Factorials::up_to(n)))
}

fn closed_form_value(n: usize, row: &CellIndex, col: &CellIndex, f: &Factorials) -> ExactInt {
    let set = ConstraintSet::from_cells(row, col);
    if set.is_consistent() {
        f.get(n - set.domain_count()).clone()
    } else {
        ExactInt::zero()
    }
}

/// Counts permutations of `[n]` satisfying every constraint by enumeration.
pub fn perm_count_oracle(n: usize, constraints: &ConstraintSet) -> Result<ExactInt> {
    check_budget(n)?;
    let count = (1..=n)
        .permutations(n)
        .filter(|p| constraints.satisfied_by(p))
        .count();
    Ok(ExactInt::from(count))
}

pub fn build_matrix(n: usize, method: BuildMethod) -> Result<SymSparseMatrix> {
    check_size(n)?;
    match method {
        BuildMethod::ClosedForm => build_closed_form(n),
        BuildMethod::BruteForce => {
            check_budget(n)?;
            build_brute_force(n)
        }
    }
}

fn build_closed_form(n: usize) -> Result<SymSparseMatrix> {
    let space = IndexSpace::new(n)?;
    let f = Factorials::up_to(n);
    let supported = space.supported_ordinals();
    let cells = space.cells();
    let mut entries = BTreeMap::new();
    for (t, &r) in supported.iter().enumerate() {
        for &c in &supported[t..] {
            let value = closed_form_value(n, &cells[r], &cells[c], &f);
            if !value.is_zero() {
                entries.insert((r, c), value);
            }
        }
    }
    SymSparseMatrix::from_entries(n, entries)
}

/// One pass over S_n. A permutation activates the `n(n+1)/2` cells
/// `((a,b),(pi(a),pi(b)))`, `a <= b`, and adds one to every pair of them.
/// S_n is sharded by the image of point 1; shards are summed in shard order.
fn build_brute_force(n: usize) -> Result<SymSparseMatrix> {
    let space = IndexSpace::new(n)?;
    let supported = space.supported_ordinals();
    let mut compact = vec![usize::MAX; space.total()];
    for (t, &o) in supported.iter().enumerate() {
        compact[o] = t;
    }
    // lookup[((a-1)*n + (x-1))*n*n + (b-1)*n + (y-1)] = compact index of {a->x, b->y}
    let mut lookup = vec![0usize; n.pow(4)];
    for a in 1..=n {
        for x in 1..=n {
            for b in 1..=n {
                for y in 1..=n {
                    let slot = ((a - 1) * n + (x - 1)) * n * n + (b - 1) * n + (y - 1);
                    if (a == b) == (x == y) {
                        lookup[slot] = compact[space.ordinal_of(a, x, b, y)?];
                    }
                }
            }
        }
    }
    let s = supported.len();
    let tri = |r: usize, c: usize| c * (c + 1) / 2 + r;

    let shard = |first: usize| -> Vec<u64> {
        let mut acc = vec![0u64; s * (s + 1) / 2];
        let rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
        let mut perm = vec![0usize; n];
        let mut active = Vec::with_capacity(n * (n + 1) / 2);
        for tail in rest.iter().copied().permutations(n - 1) {
            perm[0] = first;
            perm[1..].copy_from_slice(&tail);
            active.clear();
            for a in 1..=n {
                for b in a..=n {
                    let slot = ((a - 1) * n + (perm[a - 1] - 1)) * n * n + (b - 1) * n + (perm[b - 1] - 1);
                    active.push(lookup[slot]);
                }
            }
            active.sort_unstable();
            for (t, &r) in active.iter().enumerate() {
                for &c in &active[t..] {
                    acc[tri(r, c)] += 1;
                }
            }
        }
        acc
    };

    // rayon's reduce combines adjacent shards in index order
    let total = (1..=n)
        .into_par_iter()
        .map(shard)
        .reduce(
            || vec![0u64; s * (s + 1) / 2],
            |mut left, right| {
                for (t, v) in left.iter_mut().zip(&right) {
                    *t += v;
                }
                left
            },
        );

    let mut entries = BTreeMap::new();
    for c in 0..s {
        for r in 0..=c {
            let v = total[tri(r, c)];
            if v != 0 {
                entries.insert((supported[r], supported[c]), ExactInt::from(v));
            }
        }
    }
    SymSparseMatrix::from_entries(n, entries)
}
