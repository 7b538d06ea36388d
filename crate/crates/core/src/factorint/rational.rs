use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{factor_z, FactorError, ROOT_SCREEN_LIMIT};
use crate::ring::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRoot {
    pub value: BigRational,
    /// Denominator 1.
    pub integral: bool,
}

impl RationalRoot {
    fn new(value: BigRational) -> Self {
        let integral = value.denom().is_one();
        RationalRoot { value, integral }
    }

    /// `den * var - num`.
    pub fn linear_factor(&self, var: char) -> UniPoly {
        UniPoly::new(var, vec![-self.value.numer().clone(), self.value.denom().clone()])
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    value: String,
    integral: bool,
}

impl Serialize for RationalRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RootJson {
            value: self.value.to_string(),
            integral: self.integral,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalRoot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RootJson::deserialize(d)?;
        let value: BigRational = j.value.parse().map_err(serde::de::Error::custom)?;
        Ok(RationalRoot::new(value))
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn order_key(r: &RationalRoot) -> (BigInt, BigInt, bool) {
    (r.value.numer().abs(), r.value.denom().clone(), r.value.is_negative())
}

/// Roots of a polynomial with nonzero constant term and both end
/// coefficients at most [`ROOT_SCREEN_LIMIT`], by divisor enumeration.
pub(crate) fn rational_roots_screened(f: &UniPoly) -> Vec<RationalRoot> {
    let lc = f.leading_coeff().unwrap().abs().to_u64().unwrap();
    let c0 = f.coeff(0).abs().to_u64().unwrap();
    if c0 == 0 {
        return vec![RationalRoot::new(BigRational::zero())];
    }
    let at_one: BigInt = f.coeffs().iter().sum();
    let at_minus_one = f.eval(&BigInt::from(-1));
    let mut out = Vec::new();
    for p in divisors(c0) {
        for q in divisors(lc) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for num in [BigInt::from(p), -BigInt::from(p)] {
                let den = BigInt::from(q);
                // a root p/q forces (q - p) | f(1) and (q + p) | f(-1)
                let a = &den - &num;
                let b = &den + &num;
                if (!a.is_zero() && !at_one.is_multiple_of(&a))
                    || (!b.is_zero() && !at_minus_one.is_multiple_of(&b))
                {
                    continue;
                }
                let r = BigRational::new(num, den);
                if f.eval_rational(&r).is_zero() {
                    out.push(RationalRoot::new(r));
                }
            }
        }
    }
    out.sort_by_key(order_key);
    out
}

/// All distinct rational roots, ordered by absolute numerator, then
/// denominator, positive before negative.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<RationalRoot>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let k = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        out.push(RationalRoot::new(BigRational::zero()));
    }
    let g = UniPoly::new(f.var(), f.coeffs()[k..].to_vec());
    if g.deg().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let limit = BigInt::from(ROOT_SCREEN_LIMIT);
    if g.leading_coeff().unwrap().abs() <= limit && g.coeff(0).abs() <= limit {
        out.extend(rational_roots_screened(&g));
    } else {
        for (h, _) in factor_z(&g)?.factors {
            if h.deg() == Some(1) {
                out.push(RationalRoot::new(BigRational::new(-h.coeff(0), h.coeff(1))));
            }
        }
        out.sort_by_key(order_key);
    }
    Ok(out)
}
