//! Truncated p-typical Witt vectors.
//!
//! Arithmetic is driven by the universal integer polynomials obtained from
//! the ghost map; the same families back both the general [`WittVector`] and
//! the packed [`WittCodes`] used by the coefficient rings.

mod codes;
pub mod poly;
mod universal;
mod vector;

use thiserror::Error;

pub use codes::WittCodes;
pub use poly::IntPolynomial;
pub use universal::{universal_polys, UniversalPolys};
pub use vector::{WittBase, WittVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{size} is not a positive power of {prime}")]
    BadFieldSize { prime: u64, size: u64 },
    #[error("Witt vectors must have length at least 1")]
    ZeroLength,
    #[error("inexact division by p^{coordinate} while solving coordinate {coordinate} for p = {prime}")]
    InexactDivision { prime: u64, coordinate: usize },
    #[error("operands differ in {0}")]
    Mismatch(&'static str),
    #[error("coordinate {0} is not a canonical element of the base ring")]
    CoordinateOutOfRange(String),
    #[error("Frobenius is not defined over the imperfect p-torsion base {0}")]
    ImperfectTorsionBase(String),
    #[error("ring too large to encode")]
    TooLarge,
}
