//! Weighted index-graph pairs `(G1, G2)` and the sign-assignment search used
//! to weight their skeletons.
//!
//! A pair defines the vector with entry `w1(ab) * w2(xy)` at cell
//! `((a,b),(x,y))` for every edge `ab` of G1 and directed edge `xy` of G2.
//! G2's edge set is closed under reversal, so a G2 weighting is determined by
//! one weight per undirected edge `{x<y}`: `w2(x,y) = w` and `w2(y,x) = -w` in
//! skew mode or `w` in symmetric mode. In both modes the zero out-sum
//! condition on G2 is then the same linear condition as the G1 balance
//! condition, so one solver serves both graphs.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::arith::{int, ExactRational};
use crate::error::{Error, Result};
use crate::index::{CellIndex, IndexSpace};
use crate::vector::ExactVector;

/// Exhaustive search is capped at `2^8` sign patterns.
pub const MAX_SKELETON_EDGES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Signed balance on G1 (`sum_{b>a} w(a,b) - sum_{b<a} w(a,b) = 0`),
    /// antisymmetric G2.
    Skew,
    /// Plain balance on G1 (`sum_b w(a,b) = 0`), symmetric G2.
    Symmetric,
}

/// Undirected loop-free edge list, each edge stored `(low, high)`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Skeleton {
    edges: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn new(edges: &[(usize, usize)]) -> Result<Self> {
        let mut out: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        if let Some(&(a, _)) = out.iter().find(|(a, b)| a == b) {
            return Err(Error::InvalidParameters(format!("loop at vertex {a}")));
        }
        out.sort_unstable();
        let before = out.len();
        out.dedup();
        if out.len() != before {
            return Err(Error::InvalidParameters("duplicate edge".into()));
        }
        Ok(Self { edges: out })
    }

    /// Cycle through `vertices` in the given order.
    pub fn cycle(vertices: &[usize]) -> Result<Self> {
        let m = vertices.len();
        let edges: Vec<(usize, usize)> = (0..m).map(|t| (vertices[t], vertices[(t + 1) % m])).collect();
        Self::new(&edges)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// Net weight at `vertex` under the mode's balance rule.
fn balance(skeleton: &Skeleton, weights: &[i8], vertex: usize, mode: WeightMode) -> i32 {
    skeleton
        .edges
        .iter()
        .zip(weights)
        .map(|(&(a, b), &w)| {
            let w = i32::from(w);
            match mode {
                _ if a != vertex && b != vertex => 0,
                WeightMode::Symmetric => w,
                WeightMode::Skew if a == vertex => w,
                WeightMode::Skew => -w,
            }
        })
        .sum()
}

/// Every `{+1, -1}` weighting of the skeleton's edges satisfying the mode's
/// balance rule at every vertex, in ascending sign-mask order (bit `e` set
/// means edge `e` gets `-1`). An empty result means the skeleton is infeasible.
pub fn solve_weight_constraints(skeleton: &Skeleton, mode: WeightMode) -> Result<Vec<Vec<i8>>> {
    let m = skeleton.edges.len();
    if m > MAX_SKELETON_EDGES {
        return Err(Error::SkeletonTooLarge(m, MAX_SKELETON_EDGES));
    }
    let vertices = skeleton.vertices();
    let solutions = (0u32..1 << m)
        .map(|mask| {
            (0..m)
                .map(|e| if mask >> e & 1 == 1 { -1 } else { 1 })
                .collect::<Vec<i8>>()
        })
        .filter(|w| vertices.iter().all(|&v| balance(skeleton, w, v, mode) == 0))
        .collect();
    Ok(solutions)
}

/// The solution whose lexicographically first edge has weight `+1`, provided
/// the solution set is exactly one assignment up to global sign.
pub(crate) fn unique_weighting(skeleton: &Skeleton, mode: WeightMode) -> Result<Vec<i8>> {
    let mut normalized: Vec<Vec<i8>> = solve_weight_constraints(skeleton, mode)?
        .into_iter()
        .filter(|w| w.first() == Some(&1))
        .collect();
    match normalized.len() {
        1 => Ok(normalized.remove(0)),
        k => Err(Error::ReconstructionFailed(format!(
            "skeleton {:?} has {k} normalized {mode:?} weightings",
            skeleton.edges
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraphPair {
    pub mode: WeightMode,
    pub v1: BTreeSet<usize>,
    /// Undirected edges `(a, b)` with `a < b`.
    pub e1: BTreeMap<(usize, usize), i8>,
    pub v2: BTreeSet<usize>,
    /// Directed edges.
    pub e2: BTreeMap<(usize, usize), ExactRational>,
}

impl WeightedGraphPair {
    /// Builds the pair from per-edge weights on two skeletons.
    pub fn from_weights(
        mode: WeightMode,
        g1: &Skeleton,
        w1: &[i8],
        g2: &Skeleton,
        w2: &[i8],
    ) -> Self {
        assert_eq!(g1.edges.len(), w1.len());
        assert_eq!(g2.edges.len(), w2.len());
        let e1 = g1.edges.iter().copied().zip(w1.iter().copied()).collect();
        let mut e2 = BTreeMap::new();
        for (&(x, y), &w) in g2.edges.iter().zip(w2) {
            let w = i64::from(w);
            e2.insert((x, y), int(w));
            let back = match mode {
                WeightMode::Skew => -w,
                WeightMode::Symmetric => w,
            };
            e2.insert((y, x), int(back));
        }
        Self {
            mode,
            v1: g1.vertices(),
            e1,
            v2: g2.vertices(),
            e2,
        }
    }

    /// Re-checks every weight axiom of the pair's mode directly from the
    /// stored edge maps.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let one = int(1);
        let minus_one = int(-1);
        for (&(a, b), &w) in &self.e1 {
            if a >= b {
                return Err(format!("G1 edge ({a},{b}) not stored low-high"));
            }
            if w != 1 && w != -1 {
                return Err(format!("G1 weight {w} on ({a},{b})"));
            }
            if !self.v1.contains(&a) || !self.v1.contains(&b) {
                return Err(format!("G1 edge ({a},{b}) leaves V1"));
            }
        }
        for a in &self.v1 {
            let net: i32 = self
                .e1
                .iter()
                .map(|(&(x, y), &w)| {
                    let w = i32::from(w);
                    match self.mode {
                        _ if x != *a && y != *a => 0,
                        WeightMode::Symmetric => w,
                        WeightMode::Skew if x == *a => w,
                        WeightMode::Skew => -w,
                    }
                })
                .sum();
            if net != 0 {
                return Err(format!("G1 balance at {a} is {net}"));
            }
        }
        for (&(x, y), w) in &self.e2 {
            if x == y {
                return Err(format!("G2 loop at {x}"));
            }
            if *w != one && *w != minus_one {
                return Err(format!("G2 weight {w} on ({x},{y})"));
            }
            let Some(back) = self.e2.get(&(y, x)) else {
                return Err(format!("G2 edge ({x},{y}) has no reverse"));
            };
            let ok = match self.mode {
                WeightMode::Skew => *back == -w,
                WeightMode::Symmetric => back == w,
            };
            if !ok {
                return Err(format!("G2 weights on ({x},{y}) and ({y},{x}) break {:?} mode", self.mode));
            }
        }
        for x in &self.v2 {
            let out: ExactRational = self.e2.iter().filter(|((s, _), _)| s == x).map(|(_, w)| w).sum();
            let inc: ExactRational = self.e2.iter().filter(|((_, t), _)| t == x).map(|(_, w)| w).sum();
            if !out.is_zero() || !inc.is_zero() {
                return Err(format!("G2 flow at {x}: out {out}, in {inc}"));
            }
        }
        Ok(())
    }

    pub fn to_vector(&self, space: &IndexSpace) -> Result<ExactVector> {
        let mut v = ExactVector::zeros(space.total());
        for (&(a, b), &w1) in &self.e1 {
            for (&(x, y), w2) in &self.e2 {
                let o = space.encode(&CellIndex::new(a, b, x, y))?;
                v[o] = w2 * ExactRational::from_integer(w1.into());
            }
        }
        Ok(v)
    }
}
