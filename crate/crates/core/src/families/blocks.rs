//! Block-matrix construction of the `2n(n-2)!` eigenvectors.
//!
//! A vector over the index space is read off an `n x n` grid of `n x n`
//! blocks: block `(p, r)` entry `(q, s)` is the value at cell
//! `{p -> q, r -> s}`. The base grid `E` has `A1` at `(1,1)`, `-A1` at
//! `(2,2)`, `A3` at `(1,2)`, `A2` / `-A2` on the rest of block rows 1 / 2, the
//! transposes below the diagonal, and zeros elsewhere.
//!
//! Inside every block the indices `2..n-1` are interchangeable while `1` and
//! `n` are special. Relabelling `n` as `alpha` within blocks, and moving the
//! block layout's distinguished position `2` to `beta`, gives `(n-1)^2`
//! independent vectors.

use std::ops::Neg;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{Family, FamilyVector};
use crate::arith::{int, rat, ExactRational};
use crate::error::{Error, Result};
use crate::index::{check_size, IndexSpace};
use crate::vector::ExactVector;

/// Dense square matrix with 1-based accessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    n: usize,
    data: Vec<ExactRational>,
}

impl Square {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ExactRational::zero(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize, s: usize) -> &ExactRational {
        &self.data[(q - 1) * self.n + (s - 1)]
    }

    pub fn set(&mut self, q: usize, s: usize, value: ExactRational) {
        self.data[(q - 1) * self.n + (s - 1)] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for q in 1..=self.n {
            for s in 1..=self.n {
                t.set(s, q, self.get(q, s).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (1..=self.n).all(|q| (1..=self.n).all(|s| q == s || self.get(q, s).is_zero()))
    }

    /// `M'(q, s) = M(swap(q), swap(s))` where `swap` exchanges `a` and `b`.
    pub fn relabel(&self, a: usize, b: usize) -> Self {
        let swap = |x: usize| if x == a { b } else if x == b { a } else { x };
        let mut out = Self::zeros(self.n);
        for q in 1..=self.n {
            for s in 1..=self.n {
                out.set(q, s, self.get(swap(q), swap(s)).clone());
            }
        }
        out
    }
}

impl Neg for &Square {
    type Output = Square;

    fn neg(self) -> Square {
        Square {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

/// `diag(1 - (n-1)(n-2), n-1, ..., n-1, -1)`.
pub fn block_a1(n: usize) -> Result<Square> {
    check_size(n)?;
    let n_i = n as i64;
    let mut a = Square::zeros(n);
    a.set(1, 1, int(1 - (n_i - 1) * (n_i - 2)));
    for q in 2..n {
        a.set(q, q, int(n_i - 1));
    }
    a.set(n, n, int(-1));
    Ok(a)
}

/// Row 1: `[0, -n+2+1/(n-2), ..., -n+2+1/(n-2), -n+2]`; rows `2..n-1`:
/// `[1/(n-2), (n-1)/(n-2) off the diagonal, 0 on it, 1]`; row n: `[-1, 0, ..., 0]`.
pub fn block_a2(n: usize) -> Result<Square> {
    check_size(n)?;
    let n_i = n as i64;
    let mut a = Square::zeros(n);
    for s in 2..n {
        a.set(1, s, int(2 - n_i) + rat(1, n_i - 2));
    }
    a.set(1, n, int(2 - n_i));
    for q in 2..n {
        a.set(q, 1, rat(1, n_i - 2));
        for s in 2..n {
            if s != q {
                a.set(q, s, rat(n_i - 1, n_i - 2));
            }
        }
        a.set(q, n, ExactRational::one());
    }
    a.set(n, 1, int(-1));
    Ok(a)
}

/// Antisymmetric: row 1 `[0, -n+2, ..., -n+2, -n+3]`, rows `2..n-1`
/// `[n-2, 0, ..., 0, 1]`, row n `[n-3, -1, ..., -1, 0]`.
pub fn block_a3(n: usize) -> Result<Square> {
    check_size(n)?;
    let n_i = n as i64;
    let mut a = Square::zeros(n);
    for s in 2..n {
        a.set(1, s, int(2 - n_i));
        a.set(s, 1, int(n_i - 2));
        a.set(s, n, int(1));
        a.set(n, s, int(-1));
    }
    a.set(1, n, int(3 - n_i));
    a.set(n, 1, int(n_i - 3));
    Ok(a)
}

/// `n x n` grid of `n x n` blocks, addressed 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    n: usize,
    blocks: Vec<Square>,
}

impl BlockMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            blocks: vec![Square::zeros(n); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block(&self, p: usize, r: usize) -> &Square {
        &self.blocks[(p - 1) * self.n + (r - 1)]
    }

    pub fn set_block(&mut self, p: usize, r: usize, value: Square) {
        self.blocks[(p - 1) * self.n + (r - 1)] = value;
    }
}

/// Assembles `E` with block position `beta_role` in the role of `2` and,
/// inside every block, index `alpha_role` in the role of `n`.
pub fn assemble_e(n: usize, beta_role: usize, alpha_role: usize) -> Result<BlockMatrix> {
    check_size(n)?;
    for (name, role) in [("beta_role", beta_role), ("alpha_role", alpha_role)] {
        if !(2..=n).contains(&role) {
            return Err(Error::InvalidParameters(format!("{name}={role} outside 2..={n}")));
        }
    }
    let a1 = block_a1(n)?.relabel(alpha_role, n);
    let a2 = block_a2(n)?.relabel(alpha_role, n);
    let a3 = block_a3(n)?.relabel(alpha_role, n);
    let a2t = a2.transpose();

    // base layout with the distinguished block position at 2
    let base = |p: usize, r: usize| -> Square {
        match (p, r) {
            (1, 1) => a1.clone(),
            (1, 2) => a3.clone(),
            (1, _) => a2.clone(),
            (2, 1) => a3.transpose(),
            (2, 2) => -&a1,
            (2, _) => -&a2,
            (_, 1) => a2t.clone(),
            (_, 2) => -&a2t,
            _ => Square::zeros(n),
        }
    };
    let place = |x: usize| if x == 2 { beta_role } else if x == beta_role { 2 } else { x };
    let mut e = BlockMatrix::zeros(n);
    for p in 1..=n {
        for r in 1..=n {
            e.set_block(place(p), place(r), base(p, r));
        }
    }
    Ok(e)
}

/// Reads the vector off a block matrix with `E_rp = E_pr^T` and diagonal
/// diagonal blocks.
pub fn sym_vectorize(e: &BlockMatrix, space: &IndexSpace) -> Result<ExactVector> {
    let n = e.n();
    if space.n() != n {
        return Err(Error::DimensionMismatch {
            expected: space.n(),
            got: n,
        });
    }
    for p in 1..=n {
        if !e.block(p, p).is_diagonal() {
            return Err(Error::NondiagonalDiagonalBlock(p));
        }
        for r in p + 1..=n {
            if *e.block(r, p) != e.block(p, r).transpose() {
                return Err(Error::NotSymmetric(p, r));
            }
        }
    }
    let entries = space
        .cells()
        .iter()
        .map(|c| {
            let (p, r, q, s) = (c.domain.i, c.domain.j, c.image.k, c.image.l);
            if p == r && q != s {
                ExactRational::zero()
            } else {
                e.block(p, r).get(q, s).clone()
            }
        })
        .collect();
    Ok(ExactVector::from_entries(entries))
}

/// All `(n-1)^2` role assignments, ordered by `beta_role` then `alpha_role`.
pub fn family4_basis(n: usize) -> Result<Vec<FamilyVector>> {
    let space = IndexSpace::new(n)?;
    let roles: Vec<(usize, usize)> = (2..=n)
        .flat_map(|b| (2..=n).map(move |a| (b, a)))
        .collect();
    roles
        .into_par_iter()
        .map(|(beta, alpha)| {
            let e = assemble_e(n, beta, alpha)?;
            Ok(FamilyVector {
                family: Family::Block,
                params: format!("beta={beta},alpha={alpha}"),
                vector: sym_vectorize(&e, &space)?,
            })
        })
        .collect()
}
