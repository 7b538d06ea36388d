//! Continued fractions and the Schubert classification of 2-bridge knots.
//!
//! Convention: `[a1, a2, ..., ak] = 1 / (a1 - 1 / (a2 - ... - 1 / ak))`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoBridgeError {
    #[error("empty continued fraction")]
    Empty,
    #[error("continued fraction hits a zero denominator at entry {0}")]
    ZeroDenominator(usize),
    #[error("fraction has zero denominator")]
    ZeroFraction,
    #[error("index n = 0 is not allowed here")]
    ZeroIndex,
    #[error("cannot parse fraction `{0}`")]
    Parse(String),
}

/// Reduced fraction `p/q` with `q > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, TwoBridgeError> {
        let (p, q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(TwoBridgeError::ZeroFraction);
        }
        let r = BigRational::new(p, q);
        Ok(Fraction {
            p: r.numer().clone(),
            q: r.denom().clone(),
        })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Schubert form: `p` reduced into `[0, q)`.
    pub fn normalized(&self) -> Fraction {
        Fraction {
            p: self.p.mod_floor(&self.q),
            q: self.q.clone(),
        }
    }

    fn from_ratio(r: BigRational) -> Self {
        Fraction {
            p: r.numer().clone(),
            q: r.denom().clone(),
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl std::str::FromStr for Fraction {
    type Err = TwoBridgeError;

    fn from_str(s: &str) -> Result<Self, TwoBridgeError> {
        let bad = || TwoBridgeError::Parse(s.to_owned());
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        Fraction::new(p, q)
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn continued_fraction_value(entries: &[i64]) -> Result<Fraction, TwoBridgeError> {
    let (&last, rest) = entries.split_last().ok_or(TwoBridgeError::Empty)?;
    let mut v = BigRational::from_integer(last.into());
    for (i, &a) in rest.iter().enumerate().rev() {
        if v.is_zero() {
            return Err(TwoBridgeError::ZeroDenominator(i + 1));
        }
        v = BigRational::from_integer(a.into()) - v.recip();
    }
    if v.is_zero() {
        return Err(TwoBridgeError::ZeroDenominator(0));
    }
    Ok(Fraction::from_ratio(v.recip()))
}

/// Same knot: equal denominators and `p' = p^(+-1) mod q`.
pub fn fractions_equivalent(a: &Fraction, b: &Fraction) -> bool {
    let (a, b) = (a.normalized(), b.normalized());
    if a.q != b.q {
        return false;
    }
    if a.q.is_one() {
        return true;
    }
    a.p == b.p || (&a.p * &b.p).mod_floor(&a.q).is_one()
}

/// `[1, -2, -2n]`.
pub fn j3_expansion_first(n: i64) -> Vec<i64> {
    vec![1, -2, -2 * n]
}

/// `[2, 2, ..., 2, -2]` with `2n` entries, for `n > 0`.
pub fn j3_expansion_second(n: i64) -> Option<Vec<i64>> {
    (n > 0).then(|| {
        let mut v = vec![2; 2 * n as usize - 1];
        v.push(-2);
        v
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct J3Fractions {
    pub n: i64,
    /// `(4n - 1)/(6n - 1)`, normalized.
    pub first: Fraction,
    /// `(6n - 4)/(6n - 1)`, normalized.
    pub second: Fraction,
    pub equivalent: bool,
    pub first_expansion: Vec<i64>,
    pub first_matches: bool,
    pub second_expansion: Option<Vec<i64>>,
    pub second_matches: Option<bool>,
}

impl J3Fractions {
    pub fn all_consistent(&self) -> bool {
        self.equivalent && self.first_matches && self.second_matches != Some(false)
    }
}

/// Both closed-form fractions of J(3, 2n) with their cross-checks.
pub fn j3_fraction(n: i64) -> Result<J3Fractions, TwoBridgeError> {
    if n == 0 {
        return Err(TwoBridgeError::ZeroIndex);
    }
    let first = Fraction::new(4 * n - 1, 6 * n - 1)?.normalized();
    let second = Fraction::new(6 * n - 4, 6 * n - 1)?.normalized();
    let first_expansion = j3_expansion_first(n);
    let first_matches = continued_fraction_value(&first_expansion)?.normalized() == first;
    let second_expansion = j3_expansion_second(n);
    let second_matches = match &second_expansion {
        Some(e) => Some(continued_fraction_value(e)?.normalized() == second),
        None => None,
    };
    Ok(J3Fractions {
        n,
        equivalent: fractions_equivalent(&first, &second),
        first,
        second,
        first_expansion,
        first_matches,
        second_expansion,
        second_matches,
    })
}
