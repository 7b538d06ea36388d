//! 2×2 matrices over commutative coefficient domains, words in the
//! two meridian generators, and the Cayley–Hamilton power recursion.

mod mat2;
mod scalar;
mod word;

pub use mat2::{matrix_power_recursive, matrix_powers_range, Mat2};
pub use scalar::{Scalar, COMPLEX_UNIT_TOL};
pub use word::{Generator, GroupWord, Letter};

use thiserror::Error;

use crate::ring::{ctx_mq, LaurentPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("determinant is not 1")]
    NonUnitDeterminant,
    #[error("word syntax error at byte {pos}: {msg}")]
    WordSyntax { pos: usize, msg: String },
}

/// Images of the meridians in the normal form
/// `a -> [[m, 1], [0, 1/m]]`, `b -> [[m, 0], [-q, 1/m]]` over `Z[m, 1/m, q]`.
pub fn riley_images() -> (Mat2<LaurentPoly>, Mat2<LaurentPoly>) {
    let ctx = ctx_mq();
    let m = LaurentPoly::var(&ctx, "m").unwrap();
    let minv = LaurentPoly::monomial(&ctx, 1, vec![-1, 0]).unwrap();
    let q = LaurentPoly::var(&ctx, "q").unwrap();
    let zero = LaurentPoly::zero(&ctx);
    let one = LaurentPoly::one(&ctx);
    (
        Mat2::new(m.clone(), one, zero.clone(), minv.clone()),
        Mat2::new(m, zero, -&q, minv),
    )
}

/// Parabolic specialization `m = 1` of [`riley_images`], over `Z[q]`.
pub fn parabolic_images() -> (Mat2<UniPoly>, Mat2<UniPoly>) {
    let one = UniPoly::one('q');
    let zero = UniPoly::zero('q');
    (
        Mat2::new(one.clone(), one.clone(), zero.clone(), one.clone()),
        Mat2::new(one.clone(), zero, UniPoly::from_i64('q', &[0, -1]), one),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(a: i64, b: i64, c: i64, d: i64) -> Mat2<BigInt> {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    #[test]
    fn twist_word_at_unit_parameters() {
        let a = int(1, 1, 0, 1);
        let b = int(1, 0, -1, 1);
        // w = a^-1 b a b^-1, multiplied out by hand
        let oracle = int(1, -1, 0, 1)
            .mul(&b)
            .mul(&a)
            .mul(&int(1, 0, 1, 1));
        assert_eq!(oracle, int(3, 1, -1, 0));
        let w = GroupWord::parse("(bABa)^-1").unwrap();
        let got = w.eval(&a, &b).unwrap();
        assert_eq!(got, oracle);
        assert_eq!(got.trace(), BigInt::from(3));
    }

    #[test]
    fn j3_word_parabolic() {
        let (a, b) = parabolic_images();
        let w = GroupWord::parse("aBabAb").unwrap().eval(&a, &b).unwrap();
        let q = |c: &[i64]| UniPoly::from_i64('q', c);
        assert_eq!(w.e11, q(&[1, -2, -3, -1]));
        assert_eq!(w.e12, q(&[1, 2, 1]));
        assert_eq!(w.e21, q(&[0, -1, -2, -1]));
        assert_eq!(w.e22, q(&[1, 1, 1]));
    }

    #[test]
    fn riley_images_have_unit_determinant() {
        let (a, b) = riley_images();
        assert!(a.det().is_one());
        assert!(b.det().is_one());
        let w = GroupWord::parse("AbaB").unwrap().eval(&a, &b).unwrap();
        assert!(w.det().is_one());
        let t = crate::ring::parse_poly("2 + 2*q - m^2*q - m^-2*q + q^2", &ctx_mq()).unwrap();
        assert_eq!(w.trace(), t);
    }

    #[test]
    fn inverse_letter_needs_unit_determinant() {
        let a = int(2, 0, 0, 1);
        let b = int(1, 0, 0, 1);
        let w = GroupWord::parse("Ab").unwrap();
        assert_eq!(w.eval(&a, &b), Err(MatError::NonUnitDeterminant));
        assert!(GroupWord::parse("ab").unwrap().eval(&a, &b).is_ok());
    }
}
