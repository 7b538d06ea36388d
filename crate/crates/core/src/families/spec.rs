use std::sync::Arc;

use num_bigint::BigInt;

use super::FamilyError;
use crate::matword::{riley_images, GroupWord};
use crate::ring::{ctx_mq, ctx_xz, BivarPoly, LaurentPoly, VarContext};

/// Which classification table applies to a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// Twist knots `K_{2n}`.
    Twist,
    /// The knots `J(3, 2n)`.
    J3,
    /// User-supplied word; no classification facts are known.
    Custom,
}

/// Knot family descriptor: the word `w` of the presentation
/// `<a, b | a w^n = w^n b>`, its trace polynomial in both coordinate
/// systems, and the seeds of both recursions.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub name: String,
    pub kind: FamilyKind,
    pub word: GroupWord,
    /// `T(m, q) = trace w`.
    pub trace_mq: LaurentPoly,
    /// `t(x, z)`, equal to `T` after `x = m^2 + m^-2`, `z = x - q`.
    pub trace_xz: BivarPoly,
    /// `(R_0, R_1)`.
    pub riley_seeds: (LaurentPoly, LaurentPoly),
    /// `(r_0, r_1)`.
    pub char_seeds: (BivarPoly, BivarPoly),
}

/// The change of variables `x -> m^2 + m^-2`, `z -> m^2 + m^-2 - q`.
pub fn xz_to_mq(p: &BivarPoly) -> LaurentPoly {
    let ctx = ctx_mq();
    let x = LaurentPoly::from_terms(
        &ctx,
        [(vec![2, 0], BigInt::from(1)), (vec![-2, 0], BigInt::from(1))],
    )
    .unwrap();
    let z = &x - &LaurentPoly::var(&ctx, "q").unwrap();
    p.as_laurent()
        .substitute(&[("x", &x), ("z", &z)], &ctx)
        .expect("x, z bindings are valid in Z[m, 1/m, q]")
}

/// Riley polynomial `(m - 1/m) w12 + w22` of a matrix.
pub(crate) fn riley_entry(w: &crate::matword::Mat2<LaurentPoly>) -> LaurentPoly {
    let ctx = ctx_mq();
    let m_minus = LaurentPoly::from_terms(
        &ctx,
        [(vec![1, 0], BigInt::from(1)), (vec![-1, 0], BigInt::from(-1))],
    )
    .unwrap();
    &(&m_minus * &w.e12) + &w.e22
}

/// Inverts [`xz_to_mq`] on polynomials that are symmetric under
/// `m -> 1/m` and even in `m`.
pub fn mq_to_xz(p: &LaurentPoly) -> Result<BivarPoly, FamilyError> {
    let ctx = ctx_mq();
    if **p.ctx() != *ctx {
        return Err(FamilyError::NotLiftable(format!("expected Z[m, 1/m, q], got [{}]", p.ctx())));
    }
    let s = LaurentPoly::from_terms(
        &ctx,
        [(vec![2, 0], BigInt::from(1)), (vec![-2, 0], BigInt::from(1))],
    )
    .unwrap();
    // G(s, q) with G(m^2 + m^-2, q) = p, collected in the (x, z) slots as (s, q)
    let mut rest = p.clone();
    let mut g_terms: Vec<(Vec<i32>, BigInt)> = Vec::new();
    while !rest.is_zero() {
        let (e, c) = rest
            .terms()
            .max_by(|a, b| a.0[0].cmp(&b.0[0]).then(b.0[1].cmp(&a.0[1])))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let d = e[0];
        if d < 0 || d % 2 != 0 || (d == 0 && rest.terms().any(|(f, _)| f[0] < 0)) {
            return Err(FamilyError::NotLiftable(format!(
                "{p} is not a polynomial in m^2 + m^-2 and q"
            )));
        }
        let k = (d / 2) as u32;
        let piece = s.pow(k).shift(&[0, e[1]]).unwrap().scale(&c);
        rest = &rest - &piece;
        g_terms.push((vec![k as i32, e[1]], c));
    }
    let xz = ctx_xz();
    let g = LaurentPoly::from_terms(&xz, g_terms).unwrap();
    let x = LaurentPoly::var(&xz, "x").unwrap();
    let q_as = &x - &LaurentPoly::var(&xz, "z").unwrap();
    let f = g
        .substitute(&[("x", &x), ("z", &q_as)], &xz)
        .map_err(FamilyError::Ring)?;
    Ok(BivarPoly::from_laurent(f).unwrap())
}

impl FamilySpec {
    /// Builds a family from its word and its `(x, z)` data, checking the
    /// data against the word's matrix under the change of variables.
    pub fn new(
        name: &str,
        kind: FamilyKind,
        word: GroupWord,
        trace_xz: BivarPoly,
        char_seeds: (BivarPoly, BivarPoly),
    ) -> Result<Self, FamilyError> {
        let (a, b) = riley_images();
        let w = word.eval(&a, &b).map_err(FamilyError::Mat)?;
        let trace_mq = w.trace();
        let ctx: Arc<VarContext> = ctx_mq();
        let riley_seeds = (LaurentPoly::one(&ctx), riley_entry(&w));
        let spec = FamilySpec {
            name: name.to_owned(),
            kind,
            word,
            trace_mq,
            trace_xz,
            riley_seeds,
            char_seeds,
        };
        spec.verify()?;
        Ok(spec)
    }

    /// Derives `t(x, z)` and `r_1(x, z)` from the word alone.
    pub fn from_word(name: &str, word: GroupWord) -> Result<Self, FamilyError> {
        let (a, b) = riley_images();
        let w = word.eval(&a, &b).map_err(FamilyError::Mat)?;
        let trace_xz = mq_to_xz(&w.trace())?;
        let r1 = mq_to_xz(&riley_entry(&w))?;
        Self::new(name, FamilyKind::Custom, word, trace_xz, (BivarPoly::one(), r1))
    }

    /// Checks both substitution invariants.
    pub fn verify(&self) -> Result<(), FamilyError> {
        if xz_to_mq(&self.trace_xz) != self.trace_mq {
            return Err(FamilyError::InconsistentSpec(format!(
                "{}: t(x, z) = {} does not map to trace w = {}",
                self.name, self.trace_xz, self.trace_mq
            )));
        }
        for (i, (r, big_r)) in [
            (&self.char_seeds.0, &self.riley_seeds.0),
            (&self.char_seeds.1, &self.riley_seeds.1),
        ]
        .into_iter()
        .enumerate()
        {
            if xz_to_mq(r) != *big_r {
                return Err(FamilyError::InconsistentSpec(format!(
                    "{}: r_{i} = {r} does not map to R_{i} = {big_r}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn twist() -> Self {
        Self::new(
            "twist",
            FamilyKind::Twist,
            GroupWord::parse("(bABa)^-1").unwrap(),
            BivarPoly::parse("2 + 2x - 2z - xz + z^2").unwrap(),
            (BivarPoly::one(), BivarPoly::parse("z - 1").unwrap()),
        )
        .expect("twist family data is consistent")
    }

    pub fn j3() -> Self {
        Self::new(
            "j3",
            FamilyKind::J3,
            GroupWord::parse("aBabAb").unwrap(),
            BivarPoly::parse("-4x - 2x^2 + 5z + 6xz + x^2 z - 4z^2 - 2x z^2 + z^3").unwrap(),
            (BivarPoly::one(), BivarPoly::parse("3 + 2x - 3z - xz + z^2").unwrap()),
        )
        .expect("J(3,2n) family data is consistent")
    }
}
