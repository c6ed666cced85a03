//! Exact spectral checks on B: eigen-residuals, ranks, kernel dimensions of
//! `B - lambda I`, trace identities and the PSD verdict.
//!
//! Rows and columns of B at unsupported cells are identically zero, so every
//! elimination runs on the supported block only. An unsupported coordinate
//! adds one to the kernel dimension at `lambda = 0` and nothing otherwise.

use std::time::Instant;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{format_rational, ExactInt, ExactRational};
use crate::error::{Error, Result};
use crate::families::{family2_basis, family3_basis, family4_basis, principal_vector, Family, Family3Path, FamilyVector};
use crate::index::check_size;
use crate::linalg::{self, certified_rank, IntMatrix, RankCertificate};
use crate::matrix::{build_matrix, BuildMethod, SymSparseMatrix};
use crate::vector::ExactVector;

/// Largest n for which kernel computations run without `force`.
pub const KERNEL_MAX_N: usize = 7;

/// Prime budget for lifting a kernel basis.
const KERNEL_LIFT_PRIMES: usize = 256;

/// `true` iff `B v = lambda v` in every coordinate.
pub fn check_eigenvector(b: &SymSparseMatrix, v: &ExactVector, lambda: &ExactRational) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::Degenerate("zero vector"));
    }
    let bv = b.matvec(v)?;
    Ok(bv
        .entries()
        .iter()
        .zip(v.entries())
        .all(|(l, r)| *l == lambda * r))
}

/// Rank over Q of a list of vectors of one dimension.
pub fn rank_exact(vectors: &[ExactVector]) -> usize {
    linalg::rank_of_vectors(vectors)
}

fn budget_check(n: usize, force: bool) -> Result<()> {
    if n > KERNEL_MAX_N && !force {
        return Err(Error::BudgetExceeded {
            what: "exact kernel elimination",
            n,
            limit: KERNEL_MAX_N,
        });
    }
    Ok(())
}

/// `den * B_S - num * I` on the supported block, where `lambda = num / den`.
fn shifted_supported(b: &SymSparseMatrix, lambda: &ExactRational) -> Result<(IntMatrix, Vec<usize>)> {
    let supported = b.space().supported_ordinals();
    let mut position = vec![None; b.dim()];
    for (t, &o) in supported.iter().enumerate() {
        position[o] = Some(t);
    }
    let too_big = || Error::Degenerate("shift does not fit in 127 bits");
    let num = lambda.numer().to_i128().ok_or_else(too_big)?;
    let den = lambda.denom().to_i128().ok_or_else(too_big)?;
    let mut m = IntMatrix::zeros(supported.len(), supported.len());
    for (r, c, v) in b.entries() {
        let (Some(pr), Some(pc)) = (position[r], position[c]) else {
            return Err(Error::InvalidParameters(format!(
                "entry ({r}, {c}) lies outside the supported block"
            )));
        };
        let v = v.to_i128().ok_or_else(too_big)? * den;
        m.set(pr, pc, v);
        m.set(pc, pr, v);
    }
    for t in 0..supported.len() {
        m.add(t, t, -num);
    }
    Ok((m, supported))
}

/// Kernel dimension of `B - lambda I` with its rank certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDimension {
    pub multiplicity: usize,
    /// Certified rank of the shifted supported block.
    pub certificate: RankCertificate,
}

pub fn kernel_dimension(b: &SymSparseMatrix, lambda: &ExactRational, force: bool) -> Result<KernelDimension> {
    budget_check(b.n(), force)?;
    let (m, supported) = shifted_supported(b, lambda)?;
    let certificate = certified_rank(&m);
    let mut multiplicity = supported.len() - certificate.rank;
    if lambda.is_zero() {
        multiplicity += b.dim() - supported.len();
    }
    Ok(KernelDimension {
        multiplicity,
        certificate,
    })
}

/// `dim null(B - lambda I)`, within the default size budget.
pub fn kernel_multiplicity(b: &SymSparseMatrix, lambda: &ExactRational) -> Result<usize> {
    kernel_dimension(b, lambda, false).map(|k| k.multiplicity)
}

/// Exact basis of `null(B - lambda I)`, within the default size budget.
pub fn kernel_basis(b: &SymSparseMatrix, lambda: &ExactRational) -> Result<Vec<ExactVector>> {
    budget_check(b.n(), false)?;
    let (m, supported) = shifted_supported(b, lambda)?;
    let nullity = supported.len() - certified_rank(&m).rank;
    let lifted = linalg::kernel_basis(&m, nullity, KERNEL_LIFT_PRIMES)?;
    let mut out: Vec<ExactVector> = lifted
        .into_iter()
        .map(|x| {
            let mut v = ExactVector::zeros(b.dim());
            for (value, &o) in x.into_iter().zip(&supported) {
                v[o] = value;
            }
            v
        })
        .collect();
    if lambda.is_zero() {
        let mut is_supported = vec![false; b.dim()];
        for &o in &supported {
            is_supported[o] = true;
        }
        out.extend(
            (0..b.dim())
                .filter(|&o| !is_supported[o])
                .map(|o| ExactVector::unit(b.dim(), o)),
        );
    }
    Ok(out)
}

/// Claimed eigenvalues and multiplicities, in family order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumClaim {
    pub n: usize,
    pub entries: Vec<(Family, ExactRational, usize)>,
}

impl SpectrumClaim {
    pub fn for_n(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self {
            n,
            entries: Family::ALL
                .iter()
                .map(|&f| (f, f.eigenvalue(n), f.multiplicity(n)))
                .collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.entries.iter().map(|(_, _, m)| m).sum()
    }

    /// `(sum lambda m, sum lambda^2 m)`.
    pub fn moments(&self) -> (ExactRational, ExactRational) {
        self.entries.iter().fold(
            (ExactRational::zero(), ExactRational::zero()),
            |(t, f), (_, l, m)| {
                let m = ExactRational::from_integer(ExactInt::from(*m));
                (t + l * &m, f + l * l * &m)
            },
        )
    }
}

/// `(tr B == sum lambda m, sum of squared entries == sum lambda^2 m)`.
pub fn trace_identities(b: &SymSparseMatrix, claim: &SpectrumClaim) -> (bool, bool) {
    let (t, f) = claim.moments();
    (
        ExactRational::from_integer(b.trace()) == t,
        ExactRational::from_integer(b.sum_of_squares()) == f,
    )
}

#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    /// Run kernel eliminations beyond `KERNEL_MAX_N`.
    pub force: bool,
    /// Record wall-clock time per stage.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub computed: String,
    pub claimed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenRecord {
    pub family: u8,
    pub lambda: String,
    pub claimed_multiplicity: usize,
    /// `None` when the kernel budget was exceeded.
    pub kernel_multiplicity: Option<usize>,
    pub family_vectors: usize,
    pub family_verified: bool,
    pub family_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family3_path: Option<Family3Path>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageTime {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub dim: usize,
    pub supported: usize,
    pub eigenvalues: Vec<EigenRecord>,
    pub rank: Option<usize>,
    pub nullity: Option<usize>,
    pub trace: IdentityCheck,
    pub frobenius: IdentityCheck,
    pub orthogonal: bool,
    pub multiplicities_match: Option<bool>,
    pub rank_accounted: Option<bool>,
    pub psd: bool,
    pub partial: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<StageTime>>,
    pub passed: bool,
}

struct Stopwatch {
    enabled: bool,
    last: Instant,
    stages: Vec<StageTime>,
}

impl Stopwatch {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            last: Instant::now(),
            stages: Vec::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        if self.enabled {
            self.stages.push(StageTime {
                stage: stage.to_string(),
                seconds: (now - self.last).as_secs_f64(),
            });
        }
        self.last = now;
    }

    fn finish(self) -> Option<Vec<StageTime>> {
        self.enabled.then_some(self.stages)
    }
}

/// Every exact inner product between vectors of different families is zero.
pub fn cross_family_orthogonal(bases: &[Vec<FamilyVector>]) -> Result<bool> {
    for (a, left) in bases.iter().enumerate() {
        for right in &bases[a + 1..] {
            for x in left {
                for y in right {
                    if !x.vector.dot(&y.vector)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Generated basis of one family, with the family-3 path when relevant.
pub fn family_basis(b: &SymSparseMatrix, family: Family) -> Result<(Vec<FamilyVector>, Option<Family3Path>, Option<String>)> {
    let n = b.n();
    Ok(match family {
        Family::Principal => (
            vec![FamilyVector {
                family,
                params: String::new(),
                vector: principal_vector(n)?,
            }],
            None,
            None,
        ),
        Family::Skew => (family2_basis(n)?, None, None),
        Family::Symmetric => {
            let basis = family3_basis(b)?;
            (basis.vectors, Some(basis.path), basis.fallback_reason)
        }
        Family::Block => (family4_basis(n)?, None, None),
    })
}

/// Builds B in closed form and runs every check.
pub fn full_spectrum_report(n: usize, options: &ReportOptions) -> Result<SpectrumReport> {
    check_size(n)?;
    let mut clock = Stopwatch::new(options.timing);
    let b = build_matrix(n, BuildMethod::ClosedForm)?;
    let space = b.space();
    let claim = SpectrumClaim::for_n(n)?;
    let mut notes = Vec::new();
    clock.lap("build");

    let mut records = Vec::new();
    let mut bases = Vec::new();
    for &(family, ref lambda, claimed) in &claim.entries {
        let (basis, path, fallback) = family_basis(&b, family)?;
        if let Some(reason) = fallback {
            notes.push(format!("family 3 recipe rejected, kernel basis used: {reason}"));
        }
        let mut verified = basis.len() == claimed;
        for fv in &basis {
            verified &= check_eigenvector(&b, &fv.vector, lambda)?;
        }
        let vectors: Vec<ExactVector> = basis.iter().map(|fv| fv.vector.clone()).collect();
        records.push(EigenRecord {
            family: family.number(),
            lambda: format_rational(lambda),
            claimed_multiplicity: claimed,
            kernel_multiplicity: None,
            family_vectors: basis.len(),
            family_verified: verified,
            family_rank: rank_exact(&vectors),
            family3_path: path,
        });
        bases.push(basis);
        clock.lap(&format!("family {}", family.number()));
    }
    let orthogonal = cross_family_orthogonal(&bases)?;
    clock.lap("orthogonality");

    let mut partial = false;
    for (record, (_, lambda, _)) in records.iter_mut().zip(&claim.entries) {
        match kernel_dimension(&b, lambda, options.force) {
            Ok(k) => record.kernel_multiplicity = Some(k.multiplicity),
            Err(Error::BudgetExceeded { .. }) => partial = true,
            Err(e) => return Err(e),
        }
        clock.lap(&format!("kernel {}", record.lambda));
    }
    let (rank, nullity) = match kernel_dimension(&b, &ExactRational::zero(), options.force) {
        Ok(k) => (Some(b.dim() - k.multiplicity), Some(k.multiplicity)),
        Err(Error::BudgetExceeded { .. }) => {
            partial = true;
            (None, None)
        }
        Err(e) => return Err(e),
    };
    clock.lap("rank");
    if partial {
        notes.push(format!("kernel eliminations skipped for n > {KERNEL_MAX_N}"));
    }

    let (t, f) = claim.moments();
    let (trace_ok, frob_ok) = trace_identities(&b, &claim);
    let trace = IdentityCheck {
        computed: b.trace().to_string(),
        claimed: format_rational(&t),
        pass: trace_ok,
    };
    let frobenius = IdentityCheck {
        computed: b.sum_of_squares().to_string(),
        claimed: format_rational(&f),
        pass: frob_ok,
    };

    let computed: Option<Vec<usize>> = records.iter().map(|r| r.kernel_multiplicity).collect();
    let multiplicities_match = computed.as_ref().map(|c| {
        c.iter()
            .zip(&records)
            .all(|(k, r)| *k == r.claimed_multiplicity && r.family_rank == *k)
    });
    let rank_accounted = match (&computed, rank) {
        (Some(c), Some(r)) => Some(c.iter().sum::<usize>() == r && b.dim() - r == nullity.unwrap_or(0)),
        _ => None,
    };
    let all_positive = claim.entries.iter().all(|(_, l, _)| l.is_positive());
    let psd = all_positive && rank_accounted == Some(true);

    let families_ok = records
        .iter()
        .all(|r| r.family_verified && r.family_rank == r.claimed_multiplicity);
    let passed = families_ok
        && orthogonal
        && trace_ok
        && frob_ok
        && multiplicities_match.unwrap_or(true)
        && rank_accounted.unwrap_or(true)
        && (partial || psd);

    Ok(SpectrumReport {
        n,
        dim: b.dim(),
        supported: space.supported_ordinals().len(),
        eigenvalues: records,
        rank,
        nullity,
        trace,
        frobenius,
        orthogonal,
        multiplicities_match,
        rank_accounted,
        psd,
        partial,
        notes,
        timing: clock.finish(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::families::family2_vector;

    fn b(n: usize) -> SymSparseMatrix {
        build_matrix(n, BuildMethod::ClosedForm).unwrap()
    }

    #[test]
    fn eigenvector_checks() {
        let b4 = b(4);
        let v = principal_vector(4).unwrap();
        assert!(check_eigenvector(&b4, &v, &int(36)).unwrap());
        assert!(!check_eigenvector(&b4, &v, &int(35)).unwrap());
        assert_eq!(
            check_eigenvector(&b4, &ExactVector::zeros(136), &int(36)),
            Err(Error::Degenerate("zero vector"))
        );
        let b5 = b(5);
        assert!(check_eigenvector(&b5, &family2_vector(5, 2, 3, 2, 3).unwrap(), &int(10)).unwrap());
    }

    #[test]
    fn rank_of_duplicates() {
        let v = principal_vector(4).unwrap();
        assert_eq!(rank_exact(&[v.clone(), v]), 1);
    }

    #[test]
    fn kernel_dimensions_at_n4() {
        let b4 = b(4);
        assert_eq!(kernel_multiplicity(&b4, &int(6)).unwrap(), 4);
        assert_eq!(kernel_multiplicity(&b4, &int(16)).unwrap(), 9);
        assert_eq!(kernel_multiplicity(&b4, &int(7)).unwrap(), 0);
        assert_eq!(kernel_multiplicity(&b4, &int(0)).unwrap(), 113);
    }

    #[test]
    fn kernel_basis_vectors_are_eigenvectors() {
        let b4 = b(4);
        let basis = kernel_basis(&b4, &int(6)).unwrap();
        assert_eq!(basis.len(), 4);
        assert_eq!(rank_exact(&basis), 4);
        for v in &basis {
            assert!(check_eigenvector(&b4, v, &int(6)).unwrap());
        }
        let null = kernel_basis(&b4, &int(0)).unwrap();
        assert_eq!(null.len(), 113);
        assert!(null.iter().all(|v| b4.matvec(v).unwrap().is_zero()));
    }

    #[test]
    fn budget_is_enforced() {
        let b8 = b(8);
        assert!(matches!(
            kernel_multiplicity(&b8, &int(1)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn trace_moments() {
        let (t, f) = SpectrumClaim::for_n(4).unwrap().moments();
        assert_eq!(t, int(240));
        assert_eq!(f, int(3888));
        let (t5, _) = SpectrumClaim::for_n(5).unwrap().moments();
        assert_eq!(t5, int(1800));
        assert_eq!(trace_identities(&b(4), &SpectrumClaim::for_n(4).unwrap()), (true, true));
    }

    #[test]
    fn report_at_n4() {
        let r = full_spectrum_report(4, &ReportOptions::default()).unwrap();
        assert_eq!(r.rank, Some(23));
        assert_eq!(r.nullity, Some(113));
        let k: Vec<Option<usize>> = r.eigenvalues.iter().map(|e| e.kernel_multiplicity).collect();
        assert_eq!(k, vec![Some(1), Some(9), Some(4), Some(9)]);
        assert!(r.psd);
        assert!(r.passed, "{r:#?}");
        assert!(r.timing.is_none());
    }
}
