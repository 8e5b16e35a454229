//! Exact verification of the terminating hypergeometric identity
//!
//! `j! 2^N C(N+j-1, j) 2F1(-j, -2j; -N-j+1; -1) = sum_{l=0..N} C(N, l) prod_{i=0..j-1} 2(2i+1+l)`
//!
//! for positive integers `N`, `j`, together with the coefficient triangles and
//! falling-factorial basis changes that connect the two sides.

pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod factorial_basis;
pub mod hypergeom;
pub mod identity;
mod memo;
pub mod triangles;

pub use error::{Error, Result};
pub use exact_arith::{ExactInt, ExactRat};
pub use factorial_basis::FallingPoly;
pub use identity::{check_identity, IdentityPoint, MapCountSpec, Mode, VerifyReport};
pub use triangles::{Triangle, TriangleKind};
