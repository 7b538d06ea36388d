//! Complex roots of the reducible slices and floating-point checks of the
//! parabolic identities, the longitude holonomy and the cusp relation at
//! every slice root.
//!
//! Every check runs in double precision first and is rerun in 256-bit fixed
//! point when a residual exceeds its tolerance; reports record which
//! precision produced the numbers.

pub mod hp;
mod roots;
mod verify;

pub use hp::HpComplex;
pub use num_complex::Complex64;
pub use roots::{roots, roots_with, Root, RootOptions, RootPoint, RootSet};
pub use verify::{
    check_numeric, check_numeric_range, cusp_residual, longitude_holonomy, parabolic_word, verify_cusp_relation,
    verify_parabolic_conditions, ComplexMat, HolonomyCheck, NumericOptions, NumericReport, ParabolicResiduals,
    Precision, Residuals, RootCheck, Tolerances,
};

use thiserror::Error;

use crate::families::FamilyError;
use crate::matword::MatError;

pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-9;
pub const DEFAULT_HOLONOMY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots")]
    ConstantPolynomial,
    #[error("root finder did not converge after {iterations} iterations: {detail}")]
    NoConvergence { iterations: usize, detail: String },
    #[error("root {index} has backward error {residual:e} above tolerance {tolerance:e}")]
    ToleranceNotMet { index: usize, residual: f64, tolerance: f64 },
    #[error("root q = {q} is excluded from the cusp relation (q = 0 or q = -1)")]
    DegenerateRoot { index: usize, q: String },
    #[error("the cusp relation is stated for J(3,2n) with n < 0, got {family} n = {n}")]
    OutsideCuspRange { family: String, n: i64 },
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// `Complex64` as a `[re, im]` pair.
pub(crate) mod c64_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}
