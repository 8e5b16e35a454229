//! Falling and rising factorials, Stirling and Lah transition numbers, and
//! polynomials written over the falling-factorial basis `(x)_i`.

use std::fmt;

use num_traits::{One, Zero};

use crate::exact_arith::ExactInt;
use crate::memo::LevelCache;

/// `a (a - 1) ... (a - n + 1)`; 1 for `n = 0`.
pub fn falling(a: &ExactInt, n: u64) -> ExactInt {
    (0..n).fold(ExactInt::one(), |acc, m| acc * (a - m))
}

/// `a (a + 1) ... (a + n - 1)`; 1 for `n = 0`.
pub fn rising(a: &ExactInt, n: u64) -> ExactInt {
    (0..n).fold(ExactInt::one(), |acc, m| acc * (a + m))
}

/// Memoized Stirling numbers of the second kind `S(k, i)`, `0 <= i <= k`,
/// built row by row from `S(k + 1, i) = i S(k, i) + S(k, i - 1)`.
pub struct StirlingTable {
    cache: LevelCache,
}

impl StirlingTable {
    pub const fn new() -> Self {
        Self {
            cache: LevelCache::new(stirling_row),
        }
    }

    /// `S(k, i)`, zero when `i > k`.
    pub fn get(&self, k: usize, i: usize) -> ExactInt {
        if i > k {
            return ExactInt::zero();
        }
        self.cache.row(k)[i].clone()
    }

    /// The row `S(k, 0..=k)`.
    pub fn row(&self, k: usize) -> Vec<ExactInt> {
        self.cache.row(k).to_vec()
    }
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

fn stirling_row(k: usize, prev: Option<&[ExactInt]>) -> Vec<ExactInt> {
    let Some(prev) = prev else {
        return vec![ExactInt::one()];
    };
    let mut row = vec![ExactInt::zero(); k + 1];
    for i in 1..=k {
        let stay = prev.get(i).map_or_else(ExactInt::zero, |s| s * i);
        row[i] = stay + &prev[i - 1];
    }
    row
}

// Unsigned Lah numbers: L(k + 1, i) = (k + i) L(k, i) + L(k, i - 1).
fn lah_row(k: usize, prev: Option<&[ExactInt]>) -> Vec<ExactInt> {
    let Some(prev) = prev else {
        return vec![ExactInt::one()];
    };
    let mut row = vec![ExactInt::zero(); k + 1];
    for i in 1..=k {
        let stay = prev.get(i).map_or_else(ExactInt::zero, |l| l * (k - 1 + i));
        row[i] = stay + &prev[i - 1];
    }
    row
}

static STIRLING: StirlingTable = StirlingTable::new();
static LAH: LevelCache = LevelCache::new(lah_row);

/// Stirling number of the second kind from the shared table.
pub fn stirling2(k: usize, i: usize) -> ExactInt {
    STIRLING.get(k, i)
}

/// Unsigned Lah number: the coefficient of `(x)_i` in the rising factorial `x^(k)`.
pub fn lah(k: usize, i: usize) -> ExactInt {
    if i > k {
        return ExactInt::zero();
    }
    LAH.row(k)[i].clone()
}

/// `sum_i coeffs[i] (x)_i` with exact integer coefficients.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FallingPoly {
    coeffs: Vec<ExactInt>,
}

impl FallingPoly {
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Nested evaluation `c0 + x (c1 + (x - 1) (c2 + ...))`.
    pub fn eval(&self, x: &ExactInt) -> ExactInt {
        let mut acc = ExactInt::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * (x - i) + c;
        }
        acc
    }

    pub fn add(&self, other: &FallingPoly) -> FallingPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut coeffs = long.clone();
        for (c, s) in coeffs.iter_mut().zip(short) {
            *c += s;
        }
        FallingPoly::new(coeffs)
    }

    pub fn scale(&self, factor: &ExactInt) -> FallingPoly {
        FallingPoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

impl fmt::Display for FallingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}*(x)_{i}")?,
            }
        }
        Ok(())
    }
}

/// `x^k` in the falling basis; the coefficients are `S(k, i)`.
pub fn monomial_to_falling(k: usize) -> FallingPoly {
    FallingPoly::new(STIRLING.row(k))
}

/// The rising factorial `x (x + 1) ... (x + k - 1)` in the falling basis.
pub fn rising_to_falling(k: usize) -> FallingPoly {
    FallingPoly::new(LAH.row(k).to_vec())
}

pub fn poly_eval(p: &FallingPoly, x: &ExactInt) -> ExactInt {
    p.eval(x)
}

pub fn poly_add(p: &FallingPoly, q: &FallingPoly) -> FallingPoly {
    p.add(q)
}

pub fn poly_scale(p: &FallingPoly, c: &ExactInt) -> FallingPoly {
    p.scale(c)
}
