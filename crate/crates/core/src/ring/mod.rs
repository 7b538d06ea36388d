//! Exact integer polynomial arithmetic.
//!
//! Three representations share one variable-context model:
//!
//! * [`LaurentPoly`]: sparse, multivariate, with negative exponents allowed in
//!   variables flagged as Laurent (the meridian eigenvalue `m`).
//! * [`BivarPoly`]: sparse polynomial in `x, z` with nonnegative exponents.
//! * [`UniPoly`]: dense univariate polynomial, index = degree.
//!
//! All coefficients are arbitrary-precision integers; nothing here rounds.

mod bivar;
mod context;
mod json;
mod laurent;
mod text;
mod unipoly;

pub use bivar::BivarPoly;
pub use context::{ctx_mq, ctx_q, ctx_x, ctx_xz, VarContext};
pub use json::{PolyJson, TermJson};
pub use laurent::{Exponents, LaurentPoly};
pub use text::parse_poly;
pub use unipoly::UniPoly;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent in non-Laurent variable `{0}`")]
    NegativeExponent(String),
    #[error("exponent vector has length {got}, context has {expected} variables")]
    ExponentLength { got: usize, expected: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot invert non-monomial binding for `{0}`")]
    NonInvertibleBinding(String),
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
/// Serializes as an integer or the string `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degree {
    #[serde(with = "neg_inf")]
    NegInfinity,
    Finite(i64),
}

mod neg_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("-inf")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        match String::deserialize(d)?.as_str() {
            "-inf" => Ok(()),
            other => Err(serde::de::Error::custom(format!("expected \"-inf\", got {other:?}"))),
        }
    }
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}
