//! Triplet text format.
//!
//! ```text
//! perm-count-matrix n=<n> dim=<N> nnz=<m>
//! <row> <col> <value>      (m lines, row <= col, 0-based, sorted)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use super::SymSparseMatrix;
use crate::arith::ExactInt;
use crate::error::{Error, Result};
use crate::index::index_count;

pub fn export_triplets(m: &SymSparseMatrix) -> String {
    let mut out = String::with_capacity(16 * m.nnz() + 64);
    let _ = writeln!(
        out,
        "perm-count-matrix n={} dim={} nnz={}",
        m.n(),
        m.dim(),
        m.nnz()
    );
    for (r, c, v) in m.entries() {
        let _ = writeln!(out, "{r} {c} {v}");
    }
    out
}

/// Parses a triplet export, re-validating ordering, the upper-triangle
/// convention and value classification.
pub fn import_triplets(text: &str) -> Result<SymSparseMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, head) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let (n, dim, nnz) = parse_header(head)?;
    let expected_dim = index_count(n)?;
    if dim != expected_dim {
        return Err(Error::DimensionMismatch {
            expected: expected_dim,
            got: dim,
        });
    }
    let allowed = SymSparseMatrix::admissible_values(n);
    let mut entries = BTreeMap::new();
    let mut last: Option<(usize, usize)> = None;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [r, c, v] = fields[..] else {
            return Err(err(format!("expected 3 fields, got {}", fields.len())));
        };
        let r: usize = r.parse().map_err(|_| err(format!("bad row {r:?}")))?;
        let c: usize = c.parse().map_err(|_| err(format!("bad column {c:?}")))?;
        let v: ExactInt = v.parse().map_err(|_| err(format!("bad value {v:?}")))?;
        if r > c {
            return Err(err(format!("entry ({r}, {c}) lies below the diagonal")));
        }
        if c >= dim {
            return Err(err(format!("column {c} out of range")));
        }
        if last.is_some_and(|p| p >= (r, c)) {
            return Err(err("entries must be strictly sorted by (row, col)".into()));
        }
        if v.is_zero() || !allowed.contains(&v) {
            return Err(err(format!("value {v} is not an admissible permutation count")));
        }
        last = Some((r, c));
        entries.insert((r, c), v);
    }
    if entries.len() != nnz {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares nnz={nnz} but {} entries follow", entries.len()),
        });
    }
    SymSparseMatrix::from_entries(n, entries)
}

fn parse_header(line: &str) -> Result<(usize, usize, usize)> {
    let err = |msg: &str| Error::Parse {
        line: 1,
        msg: msg.to_string(),
    };
    let rest = line
        .strip_prefix("perm-count-matrix ")
        .ok_or_else(|| err("missing perm-count-matrix header"))?;
    let mut n = None;
    let mut dim = None;
    let mut nnz = None;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| err("bad header field"))?;
        let value: usize = value.parse().map_err(|_| err("bad header number"))?;
        match key {
            "n" => n = Some(value),
            "dim" => dim = Some(value),
            "nnz" => nnz = Some(value),
            _ => return Err(err("unknown header field")),
        }
    }
    Ok((
        n.ok_or_else(|| err("missing n"))?,
        dim.ok_or_else(|| err("missing dim"))?,
        nnz.ok_or_else(|| err("missing nnz"))?,
    ))
}
