//! Rank and kernel computations over Q via elimination modulo word-size primes.
//!
//! Rank certificate: for an integer matrix, `rank_p <= rank_Q` for every prime
//! `p`. If `rank_Q > r` then some `(r+1)`-minor `D` is nonzero, and every prime
//! with `rank_p <= r` divides `D`. Hadamard bounds `|D|` by the product of the
//! `r+1` largest row norms, so once the product of the primes used exceeds that
//! bound, `r = max rank_p` is the exact rational rank.
//!
//! Kernel bases are lifted from reduced row echelon forms by Chinese
//! remaindering and rational reconstruction, then checked exactly.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::{inv_mod, PrimeStream, PRIME_BITS};
use crate::arith::{ExactInt, ExactRational};
use crate::error::{Error, Result};

/// Dense integer matrix with entries that fit in an `i128`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    /// Converts exact integers, failing if any entry needs more than 127 bits.
    pub fn from_big_rows(rows: &[Vec<ExactInt>]) -> Result<Self> {
        let small: Option<Vec<Vec<i128>>> = rows
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
            .collect();
        small
            .map(|r| Self::from_rows(&r))
            .ok_or(Error::Degenerate("matrix entries exceed 127 bits"))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i128) {
        self.data[r * self.cols + c] = value;
    }

    pub fn add(&mut self, r: usize, c: usize, value: i128) {
        self.data[r * self.cols + c] += value;
    }

    fn row(&self, r: usize) -> &[i128] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn reduce(&self, p: u64) -> Vec<u64> {
        let m = p as i128;
        self.data.iter().map(|&x| x.rem_euclid(m) as u64).collect()
    }

    /// Upper bound on `log2` of each row's Euclidean norm, rounded up.
    fn row_norm_bits(&self) -> Vec<u64> {
        (0..self.rows)
            .map(|r| {
                let sq: BigInt = self
                    .row(r)
                    .iter()
                    .map(|&x| {
                        let b = BigInt::from(x);
                        &b * &b
                    })
                    .sum();
                sq.bits().div_ceil(2)
            })
            .collect()
    }

    /// `self * x` for an exact rational vector.
    pub fn mul_vector(&self, x: &[ExactRational]) -> Vec<ExactRational> {
        assert_eq!(x.len(), self.cols);
        let den = x
            .iter()
            .filter(|v| !v.is_zero())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<(usize, BigInt)> = x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.numer() * (&den / v.denom())))
            .collect();
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let s: BigInt = ints
                    .iter()
                    .filter(|(c, _)| row[*c] != 0)
                    .map(|(c, v)| v * BigInt::from(row[*c]))
                    .sum();
                ExactRational::new(s, den.clone())
            })
            .collect()
    }
}

/// `w * x mod p` with a precomputed quotient (Shoup's trick); requires `p < 2^63`.
#[derive(Clone, Copy)]
struct ShoupFactor {
    w: u64,
    quotient: u64,
}

impl ShoupFactor {
    fn new(w: u64, p: u64) -> Self {
        Self {
            w,
            quotient: (((w as u128) << 64) / p as u128) as u64,
        }
    }

    #[inline(always)]
    fn mul(self, x: u64, p: u64) -> u64 {
        let q = ((self.quotient as u128 * x as u128) >> 64) as u64;
        let r = self.w.wrapping_mul(x).wrapping_sub(q.wrapping_mul(p));
        if r >= p {
            r - p
        } else {
            r
        }
    }
}

/// Row-echelon elimination modulo `p` on a dense row-major buffer. With
/// `reduced`, pivots are normalized to one and cleared above as well (RREF).
/// Returns the pivot columns.
fn eliminate(a: &mut [u64], rows: usize, cols: usize, p: u64, reduced: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if pr != rank {
            for c in col..cols {
                a.swap(pr * cols + c, rank * cols + c);
            }
        }
        let inv = inv_mod(a[rank * cols + col], p);
        if reduced {
            let f = ShoupFactor::new(inv, p);
            for c in col..cols {
                a[rank * cols + c] = f.mul(a[rank * cols + c], p);
            }
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let prow = &head[rank * cols..];
        let lead = prow[col];
        let targets = tail.chunks_exact_mut(cols);
        let update = |row: &mut [u64]| {
            let x = row[col];
            if x == 0 {
                return;
            }
            let factor = if reduced {
                x
            } else {
                ((x as u128 * inv as u128) % p as u128) as u64
            };
            let f = ShoupFactor::new(factor, p);
            for c in col..cols {
                let t = f.mul(prow[c], p);
                let v = row[c];
                row[c] = if v >= t { v - t } else { v + p - t };
            }
            debug_assert_eq!(row[col], 0);
        };
        debug_assert!(!reduced || lead == 1);
        targets.for_each(update);
        if reduced {
            let (above, rest) = a.split_at_mut(rank * cols);
            let prow = &rest[..cols];
            for row in above.chunks_exact_mut(cols) {
                let x = row[col];
                if x == 0 {
                    continue;
                }
                let f = ShoupFactor::new(x, p);
                for c in col..cols {
                    let t = f.mul(prow[c], p);
                    let v = row[c];
                    row[c] = if v >= t { v - t } else { v + p - t };
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

pub fn rank_mod(m: &IntMatrix, p: u64) -> usize {
    let mut a = m.reduce(p);
    eliminate(&mut a, m.rows, m.cols, p, false).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub primes_used: usize,
    /// Bits of the Hadamard bound the primes had to exceed (0 when the rank is
    /// full and no bound is needed).
    pub bound_bits: u64,
}

/// Exact rank over Q; see the module docs for the certificate.
pub fn certified_rank(m: &IntMatrix) -> RankCertificate {
    let full = m.rows.min(m.cols);
    if full == 0 {
        return RankCertificate {
            rank: 0,
            primes_used: 0,
            bound_bits: 0,
        };
    }
    let mut bits = m.row_norm_bits();
    bits.sort_unstable_by(|a, b| b.cmp(a));
    let prefix: Vec<u64> = std::iter::once(0)
        .chain(bits.iter().scan(0u64, |acc, &b| {
            *acc += b;
            Some(*acc)
        }))
        .collect();
    let mut rank = 0;
    let mut product_bits = 0u64;
    for (used, p) in PrimeStream::new().enumerate() {
        rank = rank.max(rank_mod(m, p));
        product_bits += PRIME_BITS;
        if rank == full {
            return RankCertificate {
                rank,
                primes_used: used + 1,
                bound_bits: 0,
            };
        }
        let needed = prefix[rank + 1];
        if product_bits > needed {
            return RankCertificate {
                rank,
                primes_used: used + 1,
                bound_bits: needed,
            };
        }
    }
    unreachable!("prime stream exhausted")
}

/// Rational number `a/b` with `a ≡ u·b (mod m)` and `|a|, b <= sqrt(m/2)`, if any.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<ExactRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(ExactRational::new(num, den))
}

/// Exact basis of `{x : m x = 0}` given its certified dimension `nullity`.
///
/// Each basis vector is the RREF kernel vector for one free column: 1 there,
/// zero on the other free columns. These are independent by construction and
/// each one is checked exactly before it is returned.
pub fn kernel_basis(m: &IntMatrix, nullity: usize, max_primes: usize) -> Result<Vec<Vec<ExactRational>>> {
    let rank = m
        .cols
        .checked_sub(nullity)
        .ok_or(Error::Degenerate("nullity exceeds column count"))?;
    if nullity == 0 {
        return Ok(Vec::new());
    }
    let mut reference: Option<Vec<usize>> = None;
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut free: Vec<usize> = Vec::new();

    for p in PrimeStream::new().take(max_primes) {
        let mut a = m.reduce(p);
        let pivots = eliminate(&mut a, m.rows, m.cols, p, true);
        if pivots.len() != rank {
            continue;
        }
        match &reference {
            Some(r) if *r < pivots => continue,
            Some(r) if *r == pivots => {}
            _ => {
                // lexicographically smaller pivot set: earlier primes were unlucky
                free = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
                reference = Some(pivots.clone());
                modulus = BigInt::one();
                residues = vec![vec![BigInt::zero(); m.cols]; nullity];
            }
        }
        let pivots = reference.as_ref().expect("set above");
        let big_p = BigInt::from(p);
        for (k, &f) in free.iter().enumerate() {
            let mut local = vec![0u64; m.cols];
            local[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = a[i * m.cols + f];
                local[pc] = if v == 0 { 0 } else { p - v };
            }
            for (acc, &r) in residues[k].iter_mut().zip(&local) {
                // CRT step: acc ≡ acc (mod modulus), acc ≡ r (mod p)
                let diff = (BigInt::from(r) - &*acc).mod_floor(&big_p);
                let inv = BigInt::from(inv_mod((&modulus % &big_p).to_u64().expect("reduced"), p));
                let t = (diff * inv).mod_floor(&big_p);
                *acc += &modulus * t;
            }
        }
        modulus *= &big_p;

        let lifted: Option<Vec<Vec<ExactRational>>> = residues
            .iter()
            .map(|res| {
                res.iter()
                    .map(|u| rational_reconstruction(u, &modulus))
                    .collect()
            })
            .collect();
        if let Some(candidate) = lifted {
            if candidate
                .iter()
                .all(|x| m.mul_vector(x).iter().all(Zero::is_zero))
            {
                return Ok(candidate);
            }
        }
    }
    Err(Error::BudgetExceeded {
        what: "kernel lifting (primes)",
        n: max_primes,
        limit: max_primes,
    })
}
