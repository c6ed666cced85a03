//! Dense exact vectors over the index space, and their text export.

use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::arith::{common_denominator, format_rational, parse_rational, ExactInt, ExactRational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactVector {
    entries: Vec<ExactRational>,
}

impl ExactVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![ExactRational::zero(); dim],
        }
    }

    pub fn unit(dim: usize, at: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[at] = ExactRational::one();
        v
    }

    pub fn from_entries(entries: Vec<ExactRational>) -> Self {
        Self { entries }
    }

    pub fn from_integers(entries: Vec<ExactInt>) -> Self {
        Self {
            entries: entries.into_iter().map(ExactRational::from_integer).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[ExactRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// `(ordinal, value)` for every nonzero entry, ascending.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, &ExactRational)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
    }

    pub fn scaled(&self, factor: &ExactRational) -> Self {
        Self {
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Result<ExactRational> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .nonzeros()
            .filter(|(o, _)| !other.entries[*o].is_zero())
            .fold(ExactRational::zero(), |acc, (o, x)| acc + x * &other.entries[o]))
    }

    /// Splits the vector as `integers / denominator` with the least common
    /// denominator.
    pub fn to_integer_parts(&self) -> (Vec<ExactInt>, ExactInt) {
        let den = common_denominator(&self.entries);
        let ints = self
            .entries
            .iter()
            .map(|x| {
                if x.is_zero() {
                    ExactInt::zero()
                } else {
                    x.numer() * (&den / x.denom())
                }
            })
            .collect();
        (ints, den)
    }
}

impl Index<usize> for ExactVector {
    type Output = ExactRational;

    fn index(&self, i: usize) -> &ExactRational {
        &self.entries[i]
    }
}

impl IndexMut<usize> for ExactVector {
    fn index_mut(&mut self, i: usize) -> &mut ExactRational {
        &mut self.entries[i]
    }
}

/// Header metadata of an exported eigenvector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorHeader {
    pub n: usize,
    pub family: u8,
    pub lambda: ExactRational,
    pub params: String,
}

/// Writes `eigvec n=<n> family=<f> lambda=<num>/<den> params=<...>` followed by
/// one `ordinal num/den` line per nonzero entry.
pub fn export_vector(header: &VectorHeader, v: &ExactVector) -> String {
    let mut out = format!(
        "eigvec n={} family={} lambda={} params={}\n",
        header.n,
        header.family,
        format_rational(&header.lambda),
        header.params
    );
    for (o, x) in v.nonzeros() {
        let _ = writeln!(out, "{} {}", o, format_rational(x));
    }
    out
}

pub fn import_vector(text: &str, dim: usize) -> Result<(VectorHeader, ExactVector)> {
    let mut lines = text.lines().enumerate();
    let (_, head) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let header = parse_header(head)?;
    let mut v = ExactVector::zeros(dim);
    let mut last: Option<usize> = None;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let ordinal: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad ordinal"))?;
        let value = parts
            .next()
            .and_then(parse_rational)
            .ok_or_else(|| err("bad value"))?;
        if parts.next().is_some() {
            return Err(err("trailing fields"));
        }
        if ordinal >= dim {
            return Err(err("ordinal out of range"));
        }
        if last.is_some_and(|p| p >= ordinal) {
            return Err(err("ordinals must be strictly increasing"));
        }
        if value.is_zero() {
            return Err(err("zero entries are not stored"));
        }
        last = Some(ordinal);
        v[ordinal] = value;
    }
    Ok((header, v))
}

fn parse_header(line: &str) -> Result<VectorHeader> {
    let err = |msg: &str| Error::Parse {
        line: 1,
        msg: msg.to_string(),
    };
    let rest = line
        .strip_prefix("eigvec ")
        .ok_or_else(|| err("missing eigvec header"))?;
    let mut n = None;
    let mut family = None;
    let mut lambda = None;
    let mut params = None;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| err("bad header field"))?;
        match key {
            "n" => n = value.parse().ok(),
            "family" => family = value.parse().ok(),
            "lambda" => lambda = parse_rational(value),
            "params" => params = Some(value.to_string()),
            _ => return Err(err("unknown header field")),
        }
    }
    Ok(VectorHeader {
        n: n.ok_or_else(|| err("missing n"))?,
        family: family.ok_or_else(|| err("missing family"))?,
        lambda: lambda.ok_or_else(|| err("missing lambda"))?,
        params: params.ok_or_else(|| err("missing params"))?,
    })
}
