//! Exact integer and rational aliases plus a few helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

/// Memoized factorials `0!, 1!, ..., max!`.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<ExactInt>,
}

impl Factorials {
    pub fn up_to(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        table.push(ExactInt::one());
        for k in 1..=max {
            let next = &table[k - 1] * ExactInt::from(k);
            table.push(next);
        }
        Self { table }
    }

    pub fn get(&self, k: usize) -> &ExactInt {
        &self.table[k]
    }
}

pub fn factorial(k: usize) -> ExactInt {
    (1..=k).fold(ExactInt::one(), |acc, x| acc * ExactInt::from(x))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn rat(num: i64, den: i64) -> ExactRational {
    ExactRational::new(ExactInt::from(num), ExactInt::from(den))
}

pub fn int(value: i64) -> ExactRational {
    ExactRational::from_integer(ExactInt::from(value))
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a, I>(values: I) -> ExactInt
where
    I: IntoIterator<Item = &'a ExactRational>,
{
    values
        .into_iter()
        .filter(|v| !v.is_zero())
        .fold(ExactInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Renders `q` as `num/den` (denominator always present).
pub fn format_rational(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Option<ExactRational> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: ExactInt = num.parse().ok()?;
    let den: ExactInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(ExactRational::new(num, den))
}
