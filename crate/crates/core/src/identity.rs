//! Both sides of the identity
//!
//! `j! 2^N C(N+j-1, j) 2F1(-j, -2j; -N-j+1; -1) = sum_{l=0..N} C(N, l) prod_{i<j} 2(2i+1+l)`
//!
//! by brute force and through the falling-basis polynomials, plus the
//! `2nu`-valent map-count formula whose `nu = 2` summands the identity
//! rewrites without hypergeometric functions.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact_arith::{
    binomial, binomial_nat, factorial, parse_rational, pow2, BinomialConvention, ExactInt, ExactRat,
};
use crate::factorial_basis::falling;
use crate::hypergeom::{hyp2f1_terminating, lhs_direct, Hyp2F1Spec};
use crate::triangles::{l_poly, r_poly};

/// A point `(N, j)` with `N >= 1`. `j = 0` is accepted; both sides are `2^N` there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdentityPoint {
    n: u64,
    j: u64,
}

impl IdentityPoint {
    pub fn new(n: u64, j: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutsideDomain(
                "N = 0 is outside the identity's domain (N must be a positive integer)".into(),
            ));
        }
        Ok(Self { n, j })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn j(&self) -> u64 {
        self.j
    }
}

impl fmt::Display for IdentityPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, j={})", self.n, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Mode {
    /// Hypergeometric series against the term-by-term binomial sum.
    Direct,
    /// `2^N L_j(N)` against `2^N R_j(N)`.
    #[default]
    Fast,
    /// All four values pairwise.
    Cross,
}

/// Outcome of checking one point.
///
/// `lhs`/`rhs` are the direct values in `direct` and `cross` mode and the
/// polynomial values in `fast` mode. In `cross` mode `fast` holds the
/// polynomial pair as well, and `equal` requires all four to agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub point: IdentityPoint,
    pub mode: Mode,
    pub lhs: ExactInt,
    pub rhs: ExactInt,
    pub fast: Option<(ExactInt, ExactInt)>,
    pub equal: bool,
    pub elapsed: Duration,
}

/// The right-hand side summed term by term.
pub fn rhs_direct(n: u64, j: u64) -> ExactInt {
    (0..=n)
        .map(|l| {
            let product = (0..j).fold(ExactInt::one(), |acc, i| acc * (2 * (2 * i + 1 + l)));
            binomial_nat(n, l) * product
        })
        .sum()
}

/// `2^N R_j(N)`.
pub fn rhs_fast(n: u64, j: u64) -> ExactInt {
    pow2(n) * r_poly(j as usize).eval(&ExactInt::from(n))
}

/// `2^N L_j(N)`.
pub fn lhs_fast(n: u64, j: u64) -> ExactInt {
    pow2(n) * l_poly(j as usize).eval(&ExactInt::from(n))
}

/// `sum_{l=0..N} C(N, l) (l)_i` in closed form `2^(N-i) (N)_i` (zero for `i > N`).
pub fn binomial_falling_sum(n: u64, i: u64) -> ExactInt {
    if i > n {
        return ExactInt::zero();
    }
    pow2(n - i) * falling(&ExactInt::from(n), i)
}

/// Never fails on a mismatch: a counterexample is reported with `equal = false`.
pub fn check_identity(point: IdentityPoint, mode: Mode) -> VerifyReport {
    let start = Instant::now();
    let (n, j) = (point.n, point.j);
    let direct = || {
        (
            lhs_direct(n, j).expect("N >= 1 keeps the series denominator nonzero"),
            rhs_direct(n, j),
        )
    };
    let (lhs, rhs, fast) = match mode {
        Mode::Direct => {
            let (l, r) = direct();
            (l, r, None)
        }
        Mode::Fast => (lhs_fast(n, j), rhs_fast(n, j), None),
        Mode::Cross => {
            let (l, r) = direct();
            (l, r, Some((lhs_fast(n, j), rhs_fast(n, j))))
        }
    };
    let equal = lhs == rhs
        && fast
            .as_ref()
            .is_none_or(|(fl, fr)| *fl == lhs && *fr == rhs);
    VerifyReport {
        point,
        mode,
        lhs,
        rhs,
        fast,
        equal,
        elapsed: start.elapsed(),
    }
}

fn check_summand_params(g: u64, l: u64, j: u64, nu: u64) -> Result<()> {
    if g < 1 || l > 3 * g - 1 || j < 1 || nu < 2 {
        return Err(Error::OutsideDomain(format!(
            "summand needs g >= 1, 0 <= l <= 3g-1, j >= 1, nu >= 2 (got g={g}, l={l}, j={j}, nu={nu})"
        )));
    }
    Ok(())
}

/// `C(2g-2+l+j, j) 2F1(-j, -nu j; 2-2g-l-j; 1/(1-nu))`, without the `a_l` weight.
pub fn elt_summand(g: u64, l: u64, j: u64, nu: u64) -> Result<ExactRat> {
    check_summand_params(g, l, j, nu)?;
    let (g, l, j, nu) = (g as i64, l as i64, j as i64, nu as i64);
    let z = ExactRat::new(ExactInt::one(), ExactInt::from(1 - nu));
    let spec = Hyp2F1Spec::new(-j, -nu * j, 2 - 2 * g - l - j, z)?;
    let weight = binomial(2 * g - 2 + l + j, j, BinomialConvention::ZeroFill)?;
    Ok(hyp2f1_terminating(&spec) * ExactRat::from_integer(weight))
}

/// Whether `j! 2^N elt_summand(g, l, j, 2)` equals the binomial sum at `N = 2g - 1 + l`.
pub fn summand_equivalence(g: u64, l: u64, j: u64) -> Result<bool> {
    let summand = elt_summand(g, l, j, 2)?;
    let n = 2 * g - 1 + l;
    let scaled = summand * ExactRat::from_integer(factorial(j) * pow2(n));
    Ok(scaled == ExactRat::from_integer(rhs_direct(n, j)))
}

/// Coefficients `a_l(g, nu)`, `l = 0..3g`, as supplied externally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCoefficients {
    pub nu: u64,
    pub g: u64,
    pub a: Vec<ExactRat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientFile {
    nu: u64,
    g: u64,
    a: Vec<String>,
}

impl MapCoefficients {
    /// Parses `{ "nu": int, "g": int, "a": ["p/q" | "p", ...] }`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CoefficientFile =
            serde_json::from_str(text).map_err(|e| Error::CoefficientParse(e.to_string()))?;
        let a = file
            .a
            .iter()
            .enumerate()
            .map(|(idx, s)| {
                parse_rational(s).map_err(|e| Error::CoefficientParse(format!("a[{idx}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            nu: file.nu,
            g: file.g,
            a,
        })
    }

    pub fn with_vertices(self, j: u64) -> Result<MapCountSpec> {
        MapCountSpec::new(self.nu, self.g, j, self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCountSpec {
    nu: u64,
    g: u64,
    j: u64,
    a: Vec<ExactRat>,
}

impl MapCountSpec {
    pub fn new(nu: u64, g: u64, j: u64, a: Vec<ExactRat>) -> Result<Self> {
        if nu < 2 || g < 1 || j < 1 {
            return Err(Error::OutsideDomain(format!(
                "map count needs nu >= 2, g >= 1, j >= 1 (got nu={nu}, g={g}, j={j})"
            )));
        }
        let expected = 3 * g as usize;
        if a.len() != expected {
            return Err(Error::CoefficientLengthMismatch {
                expected,
                actual: a.len(),
            });
        }
        Ok(Self { nu, g, j, a })
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn coefficients(&self) -> &[ExactRat] {
        &self.a
    }
}

/// `j! [2nu(nu-1) C(2nu-1, nu-1)]^j sum_l a_l elt_summand(g, l, j, nu)`.
///
/// Integrality is not checked: the value is only a map count when the
/// supplied `a_l` are the true coefficients.
pub fn map_count(spec: &MapCountSpec) -> Result<ExactRat> {
    let MapCountSpec { nu, g, j, ref a } = *spec;
    let mut sum = ExactRat::zero();
    for (l, coeff) in a.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        sum += coeff * elt_summand(g, l as u64, j, nu)?;
    }
    let base = ExactInt::from(2 * nu * (nu - 1)) * binomial_nat(2 * nu - 1, nu - 1);
    let prefactor = factorial(j) * num_traits::pow(base, j as usize);
    Ok(sum * ExactRat::from_integer(prefactor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn rat(v: i64) -> ExactRat {
        ExactRat::from_integer(int(v))
    }

    fn point(n: u64, j: u64) -> IdentityPoint {
        IdentityPoint::new(n, j).unwrap()
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(rhs_direct(1, 1), int(6));
        assert_eq!(rhs_direct(2, 1), int(16));
        assert_eq!(rhs_direct(1, 2), int(44));
        assert_eq!(rhs_fast(1, 1), int(6));
        assert_eq!(rhs_fast(1, 2), int(44));
        assert_eq!(rhs_fast(30, 3), rhs_direct(30, 3));
    }

    #[test]
    fn lhs_fast_examples() {
        assert_eq!(lhs_fast(1, 1), int(6));
        assert_eq!(lhs_fast(2, 1), int(16));
        assert_eq!(lhs_fast(1, 2), int(44));
    }

    #[test]
    fn zero_j_extension() {
        for n in 1..=6 {
            let expected = pow2(n);
            assert_eq!(rhs_direct(n, 0), expected);
            assert_eq!(lhs_fast(n, 0), expected);
            let report = check_identity(point(n, 0), Mode::Cross);
            assert!(report.equal);
            assert_eq!(report.lhs, expected);
        }
    }

    #[test]
    fn zero_n_rejected() {
        assert!(matches!(
            IdentityPoint::new(0, 3),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn binomial_falling_sum_examples() {
        assert_eq!(binomial_falling_sum(3, 1), int(12));
        assert_eq!(binomial_falling_sum(4, 0), int(16));
        assert_eq!(binomial_falling_sum(2, 2), int(2));
        assert_eq!(binomial_falling_sum(2, 3), int(0));
    }

    #[test]
    fn check_identity_modes() {
        let r = check_identity(point(1, 1), Mode::Direct);
        assert!(r.equal);
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(6), int(6)));
        let r = check_identity(point(2, 1), Mode::Cross);
        assert!(r.equal);
        assert_eq!(r.fast, Some((int(16), int(16))));
        assert!(check_identity(point(7, 3), Mode::Cross).equal);
        assert!(check_identity(point(7, 3), Mode::Fast).fast.is_none());
    }

    #[test]
    fn summand_examples() {
        assert_eq!(elt_summand(1, 0, 1, 2).unwrap(), rat(3));
        assert_eq!(elt_summand(1, 1, 1, 2).unwrap(), rat(4));
        assert_eq!(elt_summand(1, 0, 2, 2).unwrap(), rat(11));
        assert!(summand_equivalence(1, 0, 1).unwrap());
        assert!(summand_equivalence(1, 1, 1).unwrap());
        assert!(summand_equivalence(1, 2, 3).unwrap());
        assert!(elt_summand(1, 3, 1, 2).is_err());
        assert!(elt_summand(0, 0, 1, 2).is_err());
        assert!(elt_summand(1, 0, 1, 1).is_err());
    }

    #[test]
    fn map_count_examples() {
        let spec = MapCountSpec::new(2, 1, 1, vec![rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(map_count(&spec).unwrap(), rat(36));
        let spec = MapCountSpec::new(2, 1, 1, vec![rat(0); 3]).unwrap();
        assert_eq!(map_count(&spec).unwrap(), rat(0));
        // rhs_direct(2, 2) = 136, so elt_summand(1, 1, 2, 2) = 136 / (2! 2^2) = 17
        assert_eq!(elt_summand(1, 1, 2, 2).unwrap(), rat(17));
        let spec = MapCountSpec::new(2, 1, 2, vec![rat(0), rat(1), rat(0)]).unwrap();
        assert_eq!(map_count(&spec).unwrap(), rat(2 * 144 * 17));
    }

    #[test]
    fn map_count_validation() {
        assert!(matches!(
            MapCountSpec::new(2, 2, 1, vec![rat(1); 3]),
            Err(Error::CoefficientLengthMismatch {
                expected: 6,
                actual: 3
            })
        ));
        assert!(MapCountSpec::new(1, 1, 1, vec![rat(1); 3]).is_err());
    }

    #[test]
    fn coefficient_file_parsing() {
        let c =
            MapCoefficients::from_json(r#"{"nu": 3, "g": 1, "a": ["1/2", "-4", "0"]}"#).unwrap();
        assert_eq!(c.nu, 3);
        assert_eq!(c.a[0], ExactRat::new(int(1), int(2)));
        assert_eq!(c.a[1], rat(-4));
        for bad in [
            r#"{"nu": 2, "g": 1, "a": ["1", "x", "0"]}"#,
            r#"{"nu": 2, "g": 1, "a": [1, 0, 0]}"#,
            r#"{"nu": 2, "a": ["1"]}"#,
            r#"{"nu": 2, "g": 1, "a": ["1/0", "0", "0"]}"#,
            "not json",
        ] {
            assert!(
                matches!(
                    MapCoefficients::from_json(bad),
                    Err(Error::CoefficientParse(_))
                ),
                "{bad}"
            );
        }
        let short = MapCoefficients::from_json(r#"{"nu": 2, "g": 1, "a": ["1"]}"#).unwrap();
        assert!(matches!(
            short.with_vertices(1),
            Err(Error::CoefficientLengthMismatch { .. })
        ));
    }
}
