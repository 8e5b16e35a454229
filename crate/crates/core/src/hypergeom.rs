//! Terminating Gauss hypergeometric series `2F1(a, b; c; z)` over exact rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{
    binomial, factorial, pow2, to_integer, BinomialConvention, ExactInt, ExactRat,
};

/// Parameters of a terminating `2F1(a, b; c; z)`.
///
/// Construction guarantees that `a` or `b` is a nonpositive integer and that
/// no denominator factor `c + m` vanishes before the series terminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyp2F1Spec {
    a: i64,
    b: i64,
    c: i64,
    z: ExactRat,
}

impl Hyp2F1Spec {
    pub fn new(a: i64, b: i64, c: i64, z: ExactRat) -> Result<Self> {
        let stop = [a, b]
            .into_iter()
            .filter(|p| *p <= 0)
            .map(|p| p.unsigned_abs())
            .min();
        let Some(stop) = stop else {
            return Err(Error::NonTerminating { a, b });
        };
        // term k carries (c)_k = c (c + 1) ... (c + k - 1)
        if let Some(m) = (0..stop).find(|m| c + *m as i64 == 0) {
            return Err(Error::DenominatorPochhammerZero { c, k: m + 1 });
        }
        Ok(Self { a, b, c, z })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn z(&self) -> &ExactRat {
        &self.z
    }

    /// Least `K` with `a + K = 0` or `b + K = 0`; the series has `K + 1` terms.
    pub fn termination_index(&self) -> u64 {
        [self.a, self.b]
            .into_iter()
            .filter(|p| *p <= 0)
            .map(i64::unsigned_abs)
            .min()
            .expect("checked at construction")
    }

    /// The terms `k = 0..=K`, each from the previous by the ratio
    /// `(a + k)(b + k) z / ((c + k)(k + 1))`.
    pub fn terms(&self) -> impl Iterator<Item = ExactRat> + '_ {
        let stop = self.termination_index();
        let mut term = ExactRat::one();
        (0..=stop).map(move |k| {
            let current = term.clone();
            if k < stop {
                let k = k as i64;
                let num = ExactInt::from(self.a + k) * (self.b + k);
                let den = ExactInt::from(self.c + k) * (k + 1);
                term = &term * ExactRat::new(num, den) * &self.z;
            }
            current
        })
    }
}

pub fn hyp2f1_terminating(spec: &Hyp2F1Spec) -> ExactRat {
    spec.terms().fold(ExactRat::zero(), |acc, t| acc + t)
}

/// `j! 2^N C(N + j - 1, j) 2F1(-j, -2j; -N - j + 1; -1)` as an exact integer.
///
/// Requires `N >= 1`; `j = 0` gives `2^N`.
pub fn lhs_direct(n: u64, j: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::OutsideDomain(
            "N must be a positive integer (N = 0 puts a zero inside the 2F1 denominator)".into(),
        ));
    }
    let (n_i, j_i) = (n as i64, j as i64);
    let spec = Hyp2F1Spec::new(-j_i, -2 * j_i, 1 - n_i - j_i, -ExactRat::one())?;
    let series = hyp2f1_terminating(&spec);
    let prefactor =
        factorial(j) * pow2(n) * binomial(n_i + j_i - 1, j_i, BinomialConvention::ZeroFill)?;
    to_integer(&(series * ExactRat::from_integer(prefactor)))
}
