//! The index space of the permutation-count matrix.
//!
//! A cell is a pair of point constraints `min(i,j) -> k`, `max(i,j) -> l`. The
//! domain pair is unordered; the image pair is ordered when the domain points
//! differ and unordered (stored `k <= l`) when they coincide. Vertices are
//! 1-based, ordinals 0-based.
//!
//! Canonical ordinal layout: every singleton cell (`i == j`) comes first,
//! lexicographic in `(i, k, l)` with `k <= l`; then every pair cell (`i < j`),
//! lexicographic in `(i, j, k, l)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest problem size for which all four eigenvector families exist.
pub const MIN_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DomainPair {
    pub i: usize,
    pub j: usize,
}

impl DomainPair {
    /// Builds the pair from two points in either order.
    pub fn new(a: usize, b: usize) -> Self {
        Self {
            i: a.min(b),
            j: a.max(b),
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.i == self.j
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ImagePair {
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellIndex {
    pub domain: DomainPair,
    pub image: ImagePair,
}

impl CellIndex {
    /// Cell `((i, j), (k, l))` exactly as written; no reordering is applied.
    pub const fn new(i: usize, j: usize, k: usize, l: usize) -> Self {
        Self {
            domain: DomainPair { i, j },
            image: ImagePair { k, l },
        }
    }

    /// The cell holding the two constraints `a -> x` and `b -> y`, normalized so
    /// that the smaller domain point comes first (and, for a singleton domain,
    /// the smaller image point).
    pub fn from_constraints(a: usize, x: usize, b: usize, y: usize) -> Self {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Self::new(a, b, x, y),
            std::cmp::Ordering::Greater => Self::new(b, a, y, x),
            std::cmp::Ordering::Equal => Self::new(a, a, x.min(y), x.max(y)),
        }
    }

    pub fn is_valid(&self, n: usize) -> bool {
        let DomainPair { i, j } = self.domain;
        let ImagePair { k, l } = self.image;
        let in_range = |v: usize| (1..=n).contains(&v);
        in_range(i) && in_range(j) && in_range(k) && in_range(l) && i <= j && (i != j || k <= l)
    }

    /// Whether the row of B at this cell can hold a nonzero entry.
    pub fn structural_support(&self) -> bool {
        let singleton = self.domain.i == self.domain.j;
        let equal_images = self.image.k == self.image.l;
        singleton == equal_images
    }

    /// The two point constraints `(min -> k, max -> l)`.
    pub fn constraints(&self) -> [(usize, usize); 2] {
        [(self.domain.i, self.image.k), (self.domain.j, self.image.l)]
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({},{}),({},{}))",
            self.domain.i, self.domain.j, self.image.k, self.image.l
        )
    }
}

pub fn check_size(n: usize) -> Result<()> {
    if n < MIN_N {
        return Err(Error::UnsupportedSize(n));
    }
    Ok(())
}

/// `(n^4 + n^2) / 2`, the dimension of B.
pub fn index_count(n: usize) -> Result<usize> {
    check_size(n)?;
    Ok((n.pow(4) + n.pow(2)) / 2)
}

/// Number of structurally supported cells, `n^2 + n^2 (n-1)^2 / 2`.
pub fn supported_count(n: usize) -> usize {
    n * n + n * n * (n - 1) * (n - 1) / 2
}

/// Canonical bijection between valid cells and `0..total`.
#[derive(Debug, Clone)]
pub struct IndexSpace {
    n: usize,
    cells: Vec<CellIndex>,
}

impl IndexSpace {
    pub fn new(n: usize) -> Result<Self> {
        let total = index_count(n)?;
        let mut cells = Vec::with_capacity(total);
        for i in 1..=n {
            for k in 1..=n {
                for l in k..=n {
                    cells.push(CellIndex::new(i, i, k, l));
                }
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        cells.push(CellIndex::new(i, j, k, l));
                    }
                }
            }
        }
        debug_assert_eq!(cells.len(), total);
        Ok(Self { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> usize {
        self.cells.len()
    }

    /// All cells in ordinal order.
    pub fn cells(&self) -> &[CellIndex] {
        &self.cells
    }

    fn singleton_block(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn encode(&self, cell: &CellIndex) -> Result<usize> {
        let n = self.n;
        if !cell.is_valid(n) {
            return Err(Error::InvalidCell { n, cell: *cell });
        }
        let DomainPair { i, j } = cell.domain;
        let ImagePair { k, l } = cell.image;
        if i == j {
            // rows k' < k of the upper triangle hold n - k' + 1 entries each
            let before_k = (k - 1) * (n + 1) - (k - 1) * k / 2;
            Ok((i - 1) * self.singleton_block() + before_k + (l - k))
        } else {
            let before_i = (i - 1) * n - (i - 1) * i / 2;
            let pair_rank = before_i + (j - i - 1);
            Ok(n * self.singleton_block() + pair_rank * n * n + (k - 1) * n + (l - 1))
        }
    }

    pub fn decode(&self, ordinal: usize) -> Result<CellIndex> {
        self.cells
            .get(ordinal)
            .copied()
            .ok_or(Error::OrdinalOutOfRange {
                ordinal,
                dim: self.total(),
            })
    }

    /// Ordinals of the structurally supported cells, ascending.
    pub fn supported_ordinals(&self) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.structural_support())
            .map(|(o, _)| o)
            .collect()
    }

    /// Ordinal of the cell holding constraints `a -> x` and `b -> y`.
    pub fn ordinal_of(&self, a: usize, x: usize, b: usize, y: usize) -> Result<usize> {
        self.encode(&CellIndex::from_constraints(a, x, b, y))
    }
}
