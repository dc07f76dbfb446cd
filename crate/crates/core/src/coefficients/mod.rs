//! Graded coefficient rings with Frobenius, Verschiebung, differential and
//! the class `eta`.
//!
//! Four kinds are shipped:
//!
//! * `witt-fp`: `W_n(F_p)`, `F` the coordinatewise `p`-th power (the
//!   identity over `F_p`), `V` the shift, `d = 0`, `eta = 0`.
//! * `witt-perfect`: `W_n(F_q)` for `q = p^r`, same operators with `F` the
//!   coordinatewise Frobenius of `F_q`.
//! * `zmod-pn`: `Z/p^n` with `F = id`, `V = p`, `d = 0`, `eta = 0`.
//! * `formal-eta` (`p = 2` only): degree 0 is `F_2[u]/(u^2)` with `u = V(1)`,
//!   degree 1 is `eta * F_2[u]`, everything of degree 2 or more is zero.
//!   `F(a + bu) = a`, `V(a + bu) = (a + b)u`, `d(a + bu) = b eta (1 + u)`.
//!   This is the smallest ring we know of where a nonzero `eta` is
//!   compatible with `fdv = d + eta`: that relation forces `F d V(x) = d(x) + eta x`,
//!   which rules out any coefficient ring on which `V` is nilpotent.

mod eta;
mod ring;
mod scalar;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ring::{CoefficientRing, ScalarOp, ScalarValue};
pub use scalar::GradedScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("truncation must be at least 1")]
    BadTruncation,
    #[error("field size {size} is not a positive power of {prime}")]
    BadFieldSize { prime: u64, size: u64 },
    #[error("the formal-eta ring exists only for p = 2 (got {0})")]
    EtaNeedsTwo(u64),
    #[error("coefficient ring too large")]
    TooLarge,
    #[error("operands belong to different coefficient rings")]
    MixedRings,
    #[error("{0}")]
    Literal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    WittFp,
    WittPerfect,
    ZmodPn,
    FormalEta,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::WittFp => "witt-fp",
            RingKind::WittPerfect => "witt-perfect",
            RingKind::ZmodPn => "zmod-pn",
            RingKind::FormalEta => "formal-eta",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "witt-fp" => RingKind::WittFp,
            "witt-perfect" => RingKind::WittPerfect,
            "zmod-pn" => RingKind::ZmodPn,
            "formal-eta" => RingKind::FormalEta,
            _ => return None,
        })
    }
}

/// Flat description of a coefficient ring: `{prime, truncation, kind}` plus
/// `field_size` for `witt-perfect`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub prime: u64,
    pub truncation: u32,
    pub kind: RingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_size: Option<u64>,
}

impl RingDescriptor {
    pub fn witt_fp(prime: u64, truncation: u32) -> Self {
        RingDescriptor {
            prime,
            truncation,
            kind: RingKind::WittFp,
            field_size: None,
        }
    }

    pub fn witt_perfect(prime: u64, field_size: u64, truncation: u32) -> Self {
        RingDescriptor {
            prime,
            truncation,
            kind: RingKind::WittPerfect,
            field_size: Some(field_size),
        }
    }

    pub fn zmod(prime: u64, truncation: u32) -> Self {
        RingDescriptor {
            prime,
            truncation,
            kind: RingKind::ZmodPn,
            field_size: None,
        }
    }

    pub fn formal_eta() -> Self {
        RingDescriptor {
            prime: 2,
            truncation: 2,
            kind: RingKind::FormalEta,
            field_size: None,
        }
    }

    pub fn eta_present(&self) -> bool {
        self.kind == RingKind::FormalEta
    }

    /// Short human-readable name such as `W_3(F_9)`.
    pub fn label(&self) -> String {
        match self.kind {
            RingKind::WittFp => format!("W_{}(F_{})", self.truncation, self.prime),
            RingKind::WittPerfect => format!("W_{}(F_{})", self.truncation, self.field_size.unwrap_or(self.prime)),
            RingKind::ZmodPn => format!("Z/{}^{}", self.prime, self.truncation),
            RingKind::FormalEta => "formal-eta".to_string(),
        }
    }
}
