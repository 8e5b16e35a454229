//! The coefficient triangles `C(k, j)`, `R(i, j)` and `L(i, j)`.
//!
//! * `C(k, j)` is the coefficient of `x^k` in `(1 + x)(3 + x)...(2j - 1 + x)`.
//! * `R(i, j)` is the coefficient of `(x)_i` in the falling-basis polynomial
//!   `R_j` with `2^N R_j(N)` equal to the binomial-sum side of the identity.
//! * `L(i, j)` is the same for `L_j`, the hypergeometric side.
//!
//! `R` and `L` are equal entry by entry, but they are deliberately kept in
//! separate tables with separate construction routes so the equality can be
//! checked rather than assumed. Every table is built level by level and
//! cached; asking for level `j` builds all levels below it. Level 0 is the
//! empty product `[1]` and is used only internally.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{
    binomial, binomial_nat, double_factorial_odd, factorial, pow2, BinomialConvention, ExactInt,
};
use crate::factorial_basis::{rising_to_falling, stirling2, FallingPoly};
use crate::memo::LevelCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum, Serialize)]
pub enum TriangleKind {
    C,
    R,
    L,
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriangleKind::C => "C",
            TriangleKind::R => "R",
            TriangleKind::L => "L",
        })
    }
}

impl FromStr for TriangleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(TriangleKind::C),
            "R" | "r" => Ok(TriangleKind::R),
            "L" | "l" => Ok(TriangleKind::L),
            other => Err(Error::OutsideDomain(format!(
                "unknown triangle kind {other:?}"
            ))),
        }
    }
}

// Shared shape of the three recurrences: new level `level` from `prev`,
// interior entries `weight(level - 1, i) * prev[i] + prev[i - 1]`.
fn propagate(
    level: usize,
    prev: &[ExactInt],
    first: ExactInt,
    weight: impl Fn(usize, usize) -> usize,
) -> Vec<ExactInt> {
    let mut row = Vec::with_capacity(level + 1);
    row.push(first);
    for i in 1..level {
        row.push(&prev[i] * weight(level - 1, i) + &prev[i - 1]);
    }
    row.push(ExactInt::one());
    row
}

fn c_row(level: usize, prev: Option<&[ExactInt]>) -> Vec<ExactInt> {
    match prev {
        None => vec![ExactInt::one()],
        Some(prev) => propagate(level, prev, double_factorial_odd(level as u64), |j, _| {
            2 * j + 1
        }),
    }
}

fn r_row(level: usize, prev: Option<&[ExactInt]>) -> Vec<ExactInt> {
    match prev {
        None => vec![ExactInt::one()],
        Some(prev) => {
            let j = level as u64;
            propagate(level, prev, pow2(j) * double_factorial_odd(j), |j, i| {
                2 * (2 * j + i + 1)
            })
        }
    }
}

fn l_marginal(level: usize) -> ExactInt {
    let j = level as u64;
    factorial(2 * j) / factorial(j)
}

fn l_recurrence_row(level: usize, prev: Option<&[ExactInt]>) -> Vec<ExactInt> {
    match prev {
        None => vec![ExactInt::one()],
        Some(prev) => propagate(level, prev, l_marginal(level), |j, i| 2 * (2 * j + i + 1)),
    }
}

// L(i, j) = j!/i! * sum_{k=i..j} C(2j, j + k) C(k - 1, i - 1), row built from scratch.
fn l_closed_row(level: usize, _prev: Option<&[ExactInt]>) -> Vec<ExactInt> {
    let j = level as u64;
    let central: Vec<ExactInt> = (0..=j).map(|k| binomial_nat(2 * j, j + k)).collect();
    let mut row = vec![ExactInt::zero(); level + 1];
    row[0] = l_marginal(level);
    // ratio = j!/i!, walked downward from i = j
    let mut ratio = ExactInt::one();
    for i in (1..=j).rev() {
        let sum: ExactInt = (i..=j)
            .map(|k| &central[k as usize] * binomial_nat(k - 1, i - 1))
            .sum();
        row[i as usize] = &ratio * sum;
        ratio *= i;
    }
    row
}

static C_TABLE: LevelCache = LevelCache::new(c_row);
static R_TABLE: LevelCache = LevelCache::new(r_row);
static L_RECURRENCE_TABLE: LevelCache = LevelCache::new(l_recurrence_row);
static L_CLOSED_TABLE: LevelCache = LevelCache::new(l_closed_row);

fn check_index(index: usize, level: usize) -> Result<()> {
    if level < 1 || index > level {
        Err(Error::IndexOutOfTriangle { index, level })
    } else {
        Ok(())
    }
}

/// `C(k, j)` by the level recurrence.
pub fn c_entry(k: usize, j: usize) -> Result<ExactInt> {
    check_index(k, j)?;
    Ok(C_TABLE.row(j)[k].clone())
}

/// `C(k, j)` by multiplying out the product in the monomial basis.
pub fn c_entry_oracle(k: usize, j: usize) -> Result<ExactInt> {
    check_index(k, j)?;
    let mut coeffs = vec![ExactInt::one()];
    for i in 0..j {
        let shift = ExactInt::from(2 * i + 1);
        let mut next = vec![ExactInt::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d] += c * &shift;
            next[d + 1] += c;
        }
        coeffs = next;
    }
    Ok(coeffs.swap_remove(k))
}

/// `R(i, j)` by the level recurrence from the marginals `2^j (2j - 1)!!` and 1.
pub fn r_entry(i: usize, j: usize) -> Result<ExactInt> {
    check_index(i, j)?;
    Ok(R_TABLE.row(j)[i].clone())
}

/// `R(i, j) = 2^(j - i) sum_{k=i..j} C(k, j) S(k, i)`.
///
/// With `S(0, 0) = 1` and `S(k, 0) = 0` for `k >= 1` the sum also yields the
/// marginal `2^j (2j - 1)!!` at `i = 0`.
pub fn r_entry_closed(i: usize, j: usize) -> Result<ExactInt> {
    check_index(i, j)?;
    let c = C_TABLE.row(j);
    let sum: ExactInt = (i..=j).map(|k| &c[k] * stirling2(k, i)).sum();
    Ok(pow2((j - i) as u64) * sum)
}

/// `L(i, j)` from its binomial-sum closed form.
pub fn l_entry_closed(i: usize, j: usize) -> Result<ExactInt> {
    check_index(i, j)?;
    Ok(L_CLOSED_TABLE.row(j)[i].clone())
}

/// `L(i, j)` from the `L` marginals propagated with the `R` recurrence.
pub fn l_entry_recurrence(i: usize, j: usize) -> Result<ExactInt> {
    check_index(i, j)?;
    Ok(L_RECURRENCE_TABLE.row(j)[i].clone())
}

/// `R_j(x)`; `R_0` is the constant 1.
pub fn r_poly(j: usize) -> FallingPoly {
    FallingPoly::new(R_TABLE.row(j).to_vec())
}

/// `L_j(x)` from the closed-form coefficients; `L_0` is the constant 1.
pub fn l_poly(j: usize) -> FallingPoly {
    FallingPoly::new(L_CLOSED_TABLE.row(j).to_vec())
}

/// `L_j(x) = sum_{k=0..j} C(j, k) (2j)!/(j + k)! x^(k)`, each rising
/// factorial `x^(k)` converted to the falling basis through Lah numbers.
pub fn l_poly_from_series(j: usize) -> FallingPoly {
    let j64 = j as u64;
    let top = factorial(2 * j64);
    (0..=j64).fold(FallingPoly::zero(), |acc, k| {
        let weight = binomial_nat(j64, k) * (&top / factorial(j64 + k));
        acc.add(&rising_to_falling(k as usize).scale(&weight))
    })
}

/// The binomial sum that must vanish for `L` to obey the `R` recurrence:
///
/// `sum_{k=i-1..j} C(2j, j+k) [2(i-1) C(k-1, i-1) + i C(k-1, i-2) - (j+1) C(k-2, i-3)]`
///
/// for `i >= 2`, with `C(-1, -1) = 1` (it appears at `i = 2, k = 1`). For
/// `i = 1` the residual is `(j+1)! [C(2j, j) - C(2j, j+1)] - ((j+1) - j) L(0, j)`.
pub fn vanishing_sum(i: usize, j: usize) -> Result<ExactInt> {
    if i < 1 || i > j {
        return Err(Error::IndexOutOfTriangle { index: i, level: j });
    }
    let (i, j) = (i as i64, j as i64);
    let bin = |n: i64, k: i64| binomial(n, k, BinomialConvention::Extended);
    if i == 1 {
        let lead = factorial(j as u64 + 1) * (bin(2 * j, j)? - bin(2 * j, j + 1)?);
        let marginal = l_marginal(j as usize);
        return Ok(lead - marginal * ((j + 1) - j));
    }
    let mut total = ExactInt::zero();
    for k in (i - 1)..=j {
        let bracket = bin(k - 1, i - 1)? * (2 * (i - 1)) + bin(k - 1, i - 2)? * i
            - bin(k - 2, i - 3)? * (j + 1);
        total += bin(2 * j, j + k)? * bracket;
    }
    Ok(total)
}

/// A materialized triangle, levels `1..=max_level`, for export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    kind: TriangleKind,
    rows: Vec<Vec<ExactInt>>,
}

#[derive(Serialize)]
struct TriangleJson {
    kind: TriangleKind,
    max_level: usize,
    rows: Vec<Vec<String>>,
}

impl Triangle {
    /// `L` is taken from its closed form.
    pub fn build(kind: TriangleKind, max_level: usize) -> Result<Self> {
        if max_level < 1 {
            return Err(Error::IndexOutOfTriangle {
                index: 0,
                level: max_level,
            });
        }
        let table = match kind {
            TriangleKind::C => &C_TABLE,
            TriangleKind::R => &R_TABLE,
            TriangleKind::L => &L_CLOSED_TABLE,
        };
        let rows = (1..=max_level).map(|j| table.row(j).to_vec()).collect();
        Ok(Self { kind, rows })
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn max_level(&self) -> usize {
        self.rows.len()
    }

    /// Row for level `j >= 1`.
    pub fn level(&self, j: usize) -> Option<&[ExactInt]> {
        j.checked_sub(1)
            .and_then(|idx| self.rows.get(idx))
            .map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.rows
    }

    /// One line per level, entries index-ascending, comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = TriangleJson {
            kind: self.kind,
            max_level: self.max_level(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("triangle serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().copied().map(int).collect()
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_entry(0, 1).unwrap(), int(1));
        assert_eq!(c_entry(1, 1).unwrap(), int(1));
        // (1 + x)(3 + x) = 3 + 4x + x^2
        assert_eq!(c_entry(0, 2).unwrap(), int(3));
        assert_eq!(c_entry(1, 2).unwrap(), int(4));
        assert_eq!(c_entry(2, 2).unwrap(), int(1));
        assert_eq!(c_entry(0, 3).unwrap(), int(15));
        for (k, v) in [(0, 3), (1, 4), (2, 1)] {
            assert_eq!(c_entry_oracle(k, 2).unwrap(), int(v));
        }
    }

    #[test]
    fn c_recurrence_matches_product_expansion() {
        for j in 1..=30 {
            for k in 0..=j {
                assert_eq!(c_entry(k, j).unwrap(), c_entry_oracle(k, j).unwrap());
            }
        }
    }

    #[test]
    fn r_and_l_examples() {
        assert_eq!(r_entry(0, 1).unwrap(), int(2));
        assert_eq!(r_entry(1, 1).unwrap(), int(1));
        assert_eq!(r_entry(1, 2).unwrap(), int(10));
        assert_eq!(r_entry(0, 2).unwrap(), int(12));
        assert_eq!(r_entry_closed(1, 2).unwrap(), int(10));
        assert_eq!(r_entry_closed(2, 2).unwrap(), int(1));
        assert_eq!(r_entry_closed(1, 1).unwrap(), int(1));
        assert_eq!(l_entry_closed(0, 2).unwrap(), int(12));
        assert_eq!(l_entry_closed(1, 2).unwrap(), int(10));
        assert_eq!(l_entry_closed(2, 2).unwrap(), int(1));
        assert_eq!(l_entry_recurrence(1, 2).unwrap(), int(10));
        assert_eq!(l_entry_recurrence(1, 1).unwrap(), int(1));
        assert_eq!(l_entry_recurrence(0, 3).unwrap(), int(120));
    }

    #[test]
    fn out_of_triangle_indices() {
        assert!(matches!(
            c_entry(3, 2),
            Err(Error::IndexOutOfTriangle { index: 3, level: 2 })
        ));
        assert!(matches!(
            r_entry(0, 0),
            Err(Error::IndexOutOfTriangle { .. })
        ));
        assert!(l_entry_closed(5, 4).is_err());
        assert!(l_entry_recurrence(0, 0).is_err());
        assert!(r_entry_closed(2, 1).is_err());
        assert!(c_entry_oracle(2, 1).is_err());
        assert!(vanishing_sum(0, 3).is_err());
        assert!(vanishing_sum(4, 3).is_err());
    }

    #[test]
    fn all_routes_agree_and_entries_are_positive() {
        for j in 1..=25 {
            for i in 0..=j {
                let r = r_entry(i, j).unwrap();
                assert!(r > ExactInt::zero());
                assert_eq!(r, r_entry_closed(i, j).unwrap(), "R closed ({i},{j})");
                assert_eq!(r, l_entry_closed(i, j).unwrap(), "L closed ({i},{j})");
                assert_eq!(
                    r,
                    l_entry_recurrence(i, j).unwrap(),
                    "L recurrence ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn polynomials() {
        assert_eq!(r_poly(1).coeffs(), &ints(&[2, 1])[..]);
        assert_eq!(r_poly(2).coeffs(), &ints(&[12, 10, 1])[..]);
        assert_eq!(l_poly(2).coeffs(), &ints(&[12, 10, 1])[..]);
        assert_eq!(l_poly_from_series(1).coeffs(), &ints(&[2, 1])[..]);
        assert_eq!(l_poly_from_series(2).coeffs(), &ints(&[12, 10, 1])[..]);
        assert_eq!(l_poly_from_series(2).eval(&int(1)), int(22));
        assert_eq!(r_poly(0).coeffs(), &ints(&[1])[..]);
        assert_eq!(l_poly(0), l_poly_from_series(0));
        for j in 1..=30 {
            assert_eq!(l_poly_from_series(j), l_poly(j), "j={j}");
        }
    }

    #[test]
    fn vanishing_sum_examples() {
        assert_eq!(vanishing_sum(2, 2).unwrap(), int(0));
        assert_eq!(vanishing_sum(1, 3).unwrap(), int(0));
        assert_eq!(vanishing_sum(3, 5).unwrap(), int(0));
    }

    #[test]
    fn vanishing_sum_needs_the_extended_convention() {
        // With plain zero-fill the k = 1 term at i = 2 loses its -(j+1) part.
        let j = 4i64;
        let zero_fill: ExactInt = (1..=j)
            .map(|k| {
                let b = |n, m| binomial(n, m, BinomialConvention::ZeroFill).unwrap();
                b(2 * j, j + k) * (b(k - 1, 1) * 2 + b(k - 1, 0) * 2 - b(k - 2, -1) * (j + 1))
            })
            .sum();
        assert_ne!(zero_fill, int(0));
        assert_eq!(vanishing_sum(2, 4).unwrap(), int(0));
    }

    #[test]
    fn export_formats() {
        let r = Triangle::build(TriangleKind::R, 2).unwrap();
        assert_eq!(r.to_csv(), "2,1\n12,10,1\n");
        assert_eq!(
            Triangle::build(TriangleKind::C, 1).unwrap().to_csv(),
            "1,1\n"
        );
        let l = Triangle::build(TriangleKind::L, 2).unwrap();
        assert_eq!(l.to_csv(), r.to_csv());
        assert_eq!(r.level(2).unwrap(), &ints(&[12, 10, 1])[..]);
        assert!(r.level(0).is_none());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["kind"], "R");
        assert_eq!(json["max_level"], 2);
        assert_eq!(json["rows"][1][1], "10");
        assert!(Triangle::build(TriangleKind::C, 0).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("R".parse::<TriangleKind>().unwrap(), TriangleKind::R);
        assert_eq!("l".parse::<TriangleKind>().unwrap(), TriangleKind::L);
        assert!("Q".parse::<TriangleKind>().is_err());
    }
}
