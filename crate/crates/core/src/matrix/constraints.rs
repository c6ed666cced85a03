use crate::index::CellIndex;

/// A partial map from domain points to image points with at most four
/// constraints. Inconsistent sets (a point sent to two images, or two points
/// sent to one image) are representable; [`ConstraintSet::is_consistent`]
/// flags them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pairs: Vec<(usize, usize)>,
}

impl ConstraintSet {
    pub const MAX: usize = 4;

    pub fn new() -> Self {
        Self::default()
    }

    /// Panics when more than [`ConstraintSet::MAX`] constraints are given.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        assert!(pairs.len() <= Self::MAX, "at most four constraints");
        Self {
            pairs: pairs.to_vec(),
        }
    }

    /// The four constraints named by a (row, column) pair of cells.
    pub fn from_cells(row: &CellIndex, col: &CellIndex) -> Self {
        let [a, b] = row.constraints();
        let [c, d] = col.constraints();
        Self {
            pairs: vec![a, b, c, d],
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_consistent(&self) -> bool {
        self.pairs.iter().enumerate().all(|(t, &(a, x))| {
            self.pairs[..t]
                .iter()
                .all(|&(b, y)| (a == b) == (x == y))
        })
    }

    /// Number of distinct constrained domain points.
    pub fn domain_count(&self) -> usize {
        self.pairs
            .iter()
            .enumerate()
            .filter(|&(t, &(a, _))| self.pairs[..t].iter().all(|&(b, _)| b != a))
            .count()
    }

    /// `perm[a - 1]` is the image of point `a`.
    pub fn satisfied_by(&self, perm: &[usize]) -> bool {
        self.pairs.iter().all(|&(a, x)| perm[a - 1] == x)
    }
}
