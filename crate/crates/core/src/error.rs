use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial({n}, {k}) with negative upper index is not defined here")]
    NegativeUpperIndex { n: i64, k: i64 },

    #[error("hypergeometric series with a = {a}, b = {b} does not terminate")]
    NonTerminating { a: i64, b: i64 },

    #[error("denominator Pochhammer (c)_k vanishes: c = {c}, k = {k}")]
    DenominatorPochhammerZero { c: i64, k: u64 },

    #[error("expected an integer but the exact value is {value}")]
    NotIntegral { value: String },

    #[error("index ({index}, {level}) lies outside the triangle")]
    IndexOutOfTriangle { index: usize, level: usize },

    #[error("{0}")]
    OutsideDomain(String),

    #[error("expected {expected} coefficients a_l (3g), got {actual}")]
    CoefficientLengthMismatch { expected: usize, actual: usize },

    #[error("coefficient file: {0}")]
    CoefficientParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
