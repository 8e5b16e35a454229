//! Exact integer and rational scalars.
//!
//! `ExactInt` and `ExactRat` are the `num` big integer and big rational types.
//! `BigRational` reduces to lowest terms with a positive denominator on every
//! construction, so structural equality is value equality.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// Which out-of-range convention `binomial` follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BinomialConvention {
    /// Zero outside `0 <= k <= n`.
    #[default]
    ZeroFill,
    /// Zero-fill, except that `binomial(-1, -1) = 1`.
    Extended,
}

/// `C(n, k)` on all integer arguments.
///
/// Out-of-range lower indices (`k < 0`, or `k > n >= 0`) give zero. A
/// negative upper index with `k >= 0` has no value without a Pochhammer
/// extension and is rejected. Under [`BinomialConvention::Extended`] the single
/// pair `(-1, -1)` evaluates to 1.
pub fn binomial(n: i64, k: i64, convention: BinomialConvention) -> Result<ExactInt> {
    if k < 0 {
        let one = convention == BinomialConvention::Extended && n == -1 && k == -1;
        return Ok(if one {
            ExactInt::one()
        } else {
            ExactInt::zero()
        });
    }
    if n < 0 {
        return Err(Error::NegativeUpperIndex { n, k });
    }
    if k > n {
        return Ok(ExactInt::zero());
    }
    Ok(binomial_nat(n as u64, k as u64))
}

/// `C(n, k)` for naturals; zero when `k > n`.
pub fn binomial_nat(n: u64, k: u64) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = ExactInt::one();
    // acc = C(n - k + m, m) after step m, always an exact division
    for m in 1..=k {
        acc *= n - k + m;
        acc /= m;
    }
    acc
}

pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(ExactInt::one(), |acc, m| acc * m)
}

/// `(2j - 1)!! = 1 * 3 * ... * (2j - 1)`, equal to 1 for `j = 0`.
pub fn double_factorial_odd(j: u64) -> ExactInt {
    (1..=j).fold(ExactInt::one(), |acc, m| acc * (2 * m - 1))
}

pub fn pow2(n: u64) -> ExactInt {
    ExactInt::one() << n
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<ExactRat> {
    let trimmed = text.trim();
    let bad = || Error::CoefficientParse(format!("not an exact rational: {text:?}"));
    let (num, den) = match trimmed.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (trimmed, "1"),
    };
    let num = ExactInt::from_str(num).map_err(|_| bad())?;
    let den = ExactInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::CoefficientParse(format!(
            "zero denominator in {text:?}"
        )));
    }
    Ok(ExactRat::new(num, den))
}

/// The integer value of `q`, if its denominator is 1.
pub fn to_integer(q: &ExactRat) -> Result<ExactInt> {
    if q.is_integer() {
        Ok(q.numer().clone())
    } else {
        Err(Error::NotIntegral {
            value: q.to_string(),
        })
    }
}
