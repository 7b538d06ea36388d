//! Recursive polynomial families attached to a knot word `w`:
//! the Riley polynomials `R_n(m, q)`, the character-variety factors
//! `r_n(x, z)`, and their diagonal `r_n(x, x)` and reducible slice
//! `r_n(2, 2 - q)`.
//!
//! Both recursions are `P_{n+1} = T P_n - P_{n-1}`, run backward from the
//! seeds for negative `n`, so everything stays in the polynomial ring.

mod alexander;
mod identities;
mod memo;
mod spec;

pub use alexander::alexander_j3;
pub use identities::{entry_identities_j3, entry_identity_induction, EntryIdentities};
pub use spec::{mq_to_xz, xz_to_mq, FamilyKind, FamilySpec};

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matword::MatError;
use crate::ring::{BivarPoly, LaurentPoly, RingError, UniPoly};
use memo::Memo;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Ring(RingError),
    #[error(transparent)]
    Mat(MatError),
    #[error("inconsistent family data: {0}")]
    InconsistentSpec(String),
    #[error("cannot express in trace coordinates: {0}")]
    NotLiftable(String),
    #[error("unknown family `{0}` (expected `twist` or `j3`)")]
    UnknownFamily(String),
    #[error("index n = 0 is not allowed here")]
    ZeroIndex,
    #[error("closed form only stated for n < 0, got n = {0}")]
    OutsideClosedForm(i64),
}

/// A family plus memoized recursion caches keyed by `n`.
///
/// Caches fill lazily; each entry is computed by exactly one thread and is
/// immutable afterwards, so a `Family` can be shared across threads.
#[derive(Debug)]
pub struct Family {
    spec: FamilySpec,
    slice_trace: UniPoly,
    riley: Memo<LaurentPoly>,
    chars: Memo<BivarPoly>,
    slices: Memo<UniPoly>,
}

impl Family {
    pub fn new(spec: FamilySpec) -> Self {
        let two = BigInt::from(2);
        Family {
            slice_trace: spec.trace_xz.slice(&two, &two),
            spec,
            riley: Memo::default(),
            chars: Memo::default(),
            slices: Memo::default(),
        }
    }

    pub fn twist() -> &'static Family {
        static F: OnceLock<Family> = OnceLock::new();
        F.get_or_init(|| Family::new(FamilySpec::twist()))
    }

    pub fn j3() -> &'static Family {
        static F: OnceLock<Family> = OnceLock::new();
        F.get_or_init(|| Family::new(FamilySpec::j3()))
    }

    pub fn by_name(name: &str) -> Result<&'static Family, FamilyError> {
        match name {
            "twist" => Ok(Self::twist()),
            "j3" => Ok(Self::j3()),
            other => Err(FamilyError::UnknownFamily(other.to_owned())),
        }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn kind(&self) -> FamilyKind {
        self.spec.kind
    }

    /// `R_n(m, q)`.
    pub fn riley_poly(&self, n: i64) -> Arc<LaurentPoly> {
        let (r0, r1) = &self.spec.riley_seeds;
        let t = &self.spec.trace_mq;
        self.riley.term(n, r0, r1, |cur, prev| &(t * cur) - prev)
    }

    /// `r_n(x, z)`; the character variety is cut out by `(x - z) r_n`.
    pub fn char_poly(&self, n: i64) -> Arc<BivarPoly> {
        let (r0, r1) = &self.spec.char_seeds;
        let t = &self.spec.trace_xz;
        self.chars.term(n, r0, r1, |cur, prev| &(t * cur) - prev)
    }

    /// `r_n(x, x)`.
    pub fn diagonal_poly(&self, n: i64) -> UniPoly {
        self.char_poly(n).diagonal()
    }

    /// `r_n(2, 2 - q)`, run through the sliced recursion (evaluation is a
    /// ring map, so slicing commutes with the recursion).
    pub fn reducible_slice(&self, n: i64) -> Arc<UniPoly> {
        let two = BigInt::from(2);
        let s0 = self.spec.char_seeds.0.slice(&two, &two);
        let s1 = self.spec.char_seeds.1.slice(&two, &two);
        let t = &self.slice_trace;
        self.slices.term(n, &s0, &s1, |cur, prev| &(t * cur) - prev)
    }
}

/// A rational trace value `(2n - 1)/n` and whether it is an algebraic
/// integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceValue {
    #[serde(serialize_with = "ser_ratio", deserialize_with = "de_ratio")]
    pub value: BigRational,
    pub non_integral: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn de_ratio<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

/// Root `x = (2n - 1)/n` of the twist diagonal `n x - (2n - 1)`.
pub fn nonintegral_trace(n: i64) -> Result<TraceValue, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroIndex);
    }
    let value = BigRational::new(BigInt::from(2 * n - 1), BigInt::from(n));
    let non_integral = !value.denom().is_one();
    Ok(TraceValue { value, non_integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ctx_mq, parse_poly, Degree};

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::from_i64('q', c)
    }

    #[test]
    fn twist_riley_seeds_and_backward_step() {
        let f = Family::twist();
        assert!(f.riley_poly(0).is_one());
        assert_eq!(
            *f.riley_poly(1),
            parse_poly("-1 + m^2 + m^-2 - q", &ctx_mq()).unwrap()
        );
        let at_one = f.riley_poly(-1).substitute(
            &[("m", &LaurentPoly::one(&ctx_mq()))],
            &ctx_mq(),
        );
        // R_-1 = T R_0 - R_1 with T(1, q) = 2 + q^2 and R_1(1, q) = 1 - q
        assert_eq!(at_one.unwrap().to_unipoly("q").unwrap(), q(&[1, 1, 1]));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(*Family::twist().char_poly(1), BivarPoly::parse("z - 1").unwrap());
        assert_eq!(
            *Family::twist().char_poly(-1),
            BivarPoly::parse("3 + 2x - 3z - xz + z^2").unwrap()
        );
        assert_eq!(
            *Family::j3().char_poly(1),
            BivarPoly::parse("3 + 2x - 3z - xz + z^2").unwrap()
        );
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(Family::twist().diagonal_poly(1), UniPoly::from_i64('x', &[-1, 1]));
        assert_eq!(Family::twist().diagonal_poly(-1), UniPoly::from_i64('x', &[3, -1]));
        let d = Family::j3().diagonal_poly(-1);
        assert_eq!(d.degree(), Degree::Finite(1));
        assert_eq!(d.leading_coeff(), Some(&BigInt::from(2)));
    }

    #[test]
    fn slices_match_substitution_and_degree_laws() {
        let two = BigInt::from(2);
        for f in [Family::twist(), Family::j3()] {
            for n in -6..=6 {
                assert_eq!(*f.reducible_slice(n), f.char_poly(n).slice(&two, &two), "{} {n}", f.name());
            }
        }
        assert_eq!(*Family::twist().reducible_slice(-1), q(&[1, 1, 1]));
        for n in -8..0 {
            assert_eq!(Family::twist().reducible_slice(n).degree(), Degree::Finite(-2 * n));
            assert_eq!(Family::j3().reducible_slice(n).degree(), Degree::Finite(-3 * n));
        }
    }

    #[test]
    fn nonintegral_trace_values() {
        let v = nonintegral_trace(2).unwrap();
        assert_eq!(v.value.to_string(), "3/2");
        assert!(v.non_integral);
        let v = nonintegral_trace(1).unwrap();
        assert_eq!(v.value.to_string(), "1");
        assert!(!v.non_integral);
        let v = nonintegral_trace(-1).unwrap();
        assert_eq!(v.value.to_string(), "3");
        assert!(!v.non_integral);
        assert_eq!(nonintegral_trace(0), Err(FamilyError::ZeroIndex));
    }

    #[test]
    fn unknown_family_name() {
        assert!(matches!(Family::by_name("k5"), Err(FamilyError::UnknownFamily(_))));
    }
}
