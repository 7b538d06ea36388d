use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::ring::{BivarPoly, LaurentPoly, UniPoly};

/// Commutative coefficient domain for [`Mat2`](super::Mat2).
///
/// Constants come from an existing element (`zero_like`, `one_like`) so that
/// context-carrying polynomials work without a global context. For floating
/// domains `is_one` is a tolerance test.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn is_one_elem(&self) -> bool;
}

macro_rules! exact_poly_scalar {
    ($t:ty, $zero:expr, $one:expr) => {
        impl Scalar for $t {
            fn zero_like(&self) -> Self {
                #[allow(clippy::redundant_closure_call)]
                ($zero)(self)
            }
            fn one_like(&self) -> Self {
                #[allow(clippy::redundant_closure_call)]
                ($one)(self)
            }
            fn plus(&self, o: &Self) -> Self {
                self + o
            }
            fn minus(&self, o: &Self) -> Self {
                self - o
            }
            fn times(&self, o: &Self) -> Self {
                self * o
            }
            fn negated(&self) -> Self {
                -self
            }
            fn is_zero_elem(&self) -> bool {
                self.is_zero()
            }
            fn is_one_elem(&self) -> bool {
                self.is_one()
            }
        }
    };
}

exact_poly_scalar!(LaurentPoly, |p: &LaurentPoly| LaurentPoly::zero(p.ctx()), |p: &LaurentPoly| {
    LaurentPoly::one(p.ctx())
});
exact_poly_scalar!(BivarPoly, |_| BivarPoly::zero(), |_| BivarPoly::one());
exact_poly_scalar!(UniPoly, |p: &UniPoly| UniPoly::zero(p.var()), |p: &UniPoly| UniPoly::one(p.var()));
exact_poly_scalar!(BigInt, |_| BigInt::zero(), |_| BigInt::one());

/// Relative tolerance for `Complex64::is_one_elem`.
pub const COMPLEX_UNIT_TOL: f64 = 1e-9;

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::zero()
    }
    fn one_like(&self) -> Self {
        Complex64::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn is_one_elem(&self) -> bool {
        (self - Complex64::one()).norm() < COMPLEX_UNIT_TOL
    }
}
