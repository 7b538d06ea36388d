use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ctx_q, ctx_xz, Degree, LaurentPoly, RingError, UniPoly};

/// Polynomial in the trace coordinates `x, z` over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly(LaurentPoly);

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly(LaurentPoly::zero(&ctx_xz()))
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BivarPoly(LaurentPoly::constant(&ctx_xz(), c))
    }

    pub fn x() -> Self {
        BivarPoly(LaurentPoly::var(&ctx_xz(), "x").unwrap())
    }

    pub fn z() -> Self {
        BivarPoly(LaurentPoly::var(&ctx_xz(), "z").unwrap())
    }

    /// Builds from `((deg_x, deg_z), coeff)` pairs.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigInt)>,
    {
        let ctx = ctx_xz();
        BivarPoly(
            LaurentPoly::from_terms(
                &ctx,
                terms
                    .into_iter()
                    .map(|((a, b), c)| (vec![a as i32, b as i32], c)),
            )
            .expect("nonnegative exponents"),
        )
    }

    pub fn parse(text: &str) -> Result<Self, RingError> {
        super::parse_poly(text, &ctx_xz()).map(BivarPoly)
    }

    pub fn from_laurent(p: LaurentPoly) -> Result<Self, RingError> {
        if **p.ctx() != *ctx_xz() {
            return Err(RingError::ContextMismatch {
                left: p.ctx().to_string(),
                right: ctx_xz().to_string(),
            });
        }
        Ok(BivarPoly(p))
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    /// `((deg_x, deg_z), coeff)` in storage order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.0.terms().map(|(e, c)| ((e[0] as u32, e[1] as u32), c))
    }

    pub fn num_terms(&self) -> usize {
        self.0.num_terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn total_degree(&self) -> Degree {
        self.0.total_degree()
    }

    pub fn degree_in(&self, var: &str) -> Result<Degree, RingError> {
        self.0.degree_in(var)
    }

    pub fn leading_coeff_in(&self, var: &str) -> Result<BivarPoly, RingError> {
        self.0.leading_coeff_in(var).map(BivarPoly)
    }

    /// `p(x, x)` as a polynomial in `x`.
    pub fn diagonal(&self) -> UniPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for ((a, b), c) in self.terms() {
            let d = (a + b) as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] += c;
        }
        UniPoly::new('x', coeffs)
    }

    /// `p(x0, z0 - q)` as a polynomial in `q`.
    pub fn slice(&self, x0: &BigInt, z0: &BigInt) -> UniPoly {
        let q = ctx_q();
        let xb = LaurentPoly::constant(&q, x0.clone());
        let zb = &LaurentPoly::constant(&q, z0.clone()) - &LaurentPoly::var(&q, "q").unwrap();
        self.0
            .substitute(&[("x", &xb), ("z", &zb)], &q)
            .and_then(|p| p.to_unipoly("q"))
            .expect("slice stays in Z[q]")
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({})", self.0)
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly(&self.0 + &rhs.0)
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly(&self.0 - &rhs.0)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly(&self.0 * &rhs.0)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly(-&self.0)
    }
}
