use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::hp::{HpComplex, FRAC_BITS};
use super::{c64_serde, NumericError};
use crate::ring::UniPoly;

/// Knobs for [`roots_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootOptions {
    /// Bound on the backward error of every returned root.
    pub tolerance: f64,
    /// Aberth sweeps before giving up.
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tolerance: super::DEFAULT_ROOT_TOL,
            max_iterations: 500,
        }
    }
}

/// A root both as a double and as a fixed-point value polished by Newton's
/// method on its square-free factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootPoint {
    #[serde(with = "c64_serde")]
    pub value: Complex64,
    pub hp: HpComplex,
}

impl RootPoint {
    /// A point known only to double precision; the fixed-point value is the
    /// exact binary value of the double.
    pub fn from_c64(value: Complex64) -> Self {
        RootPoint {
            value,
            hp: HpComplex::from_c64(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Root {
    #[serde(flatten)]
    pub point: RootPoint,
    pub multiplicity: usize,
    /// `|p(r)| / sum |c_i| |r|^i` at the double value `r`.
    pub backward_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub polynomial: UniPoly,
    pub tolerance: f64,
    /// Aberth sweeps used, summed over square-free factors.
    pub iterations: usize,
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn max_backward_error(&self) -> f64 {
        self.roots.iter().map(|r| r.backward_error).fold(0.0, f64::max)
    }

    /// Roots counted with multiplicity.
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

pub fn roots(p: &UniPoly) -> Result<RootSet, NumericError> {
    roots_with(p, &RootOptions::default())
}

/// All complex roots of `p`: square-free decomposition, Aberth iteration in
/// double precision on each factor, then fixed-point Newton polishing.
/// Deterministic: seeds sit on a fixed circle.
pub fn roots_with(p: &UniPoly, opts: &RootOptions) -> Result<RootSet, NumericError> {
    match p.deg() {
        None => return Err(NumericError::ZeroPolynomial),
        Some(0) => return Err(NumericError::ConstantPolynomial),
        _ => {}
    }
    let mut out = Vec::new();
    let mut iterations = 0;
    for (factor, mult) in p.squarefree_decomposition() {
        let (approx, its) = aberth(&factor, opts.max_iterations)?;
        iterations += its;
        let polished = polish(&factor, approx.iter().map(|z| HpComplex::from_c64(*z)).collect());
        for i in 0..polished.len() {
            for j in 0..i {
                if polished[i].sub(&polished[j]).log2_abs() < -(FRAC_BITS as f64) / 2.0 {
                    return Err(NumericError::NoConvergence {
                        iterations,
                        detail: "two approximations polished onto the same root".into(),
                    });
                }
            }
        }
        for hp in polished {
            let value = hp.to_c64();
            let point = RootPoint { value, hp };
            let backward_error = backward_error(p, &point.value);
            out.push(Root {
                point,
                multiplicity: mult,
                backward_error,
            });
        }
    }
    out.sort_by(|a, b| {
        a.point
            .value
            .re
            .total_cmp(&b.point.value.re)
            .then(a.point.value.im.total_cmp(&b.point.value.im))
    });
    for (i, r) in out.iter().enumerate() {
        // negated so a NaN residual also fails
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(r.backward_error <= opts.tolerance) {
            return Err(NumericError::ToleranceNotMet {
                index: i,
                residual: r.backward_error,
                tolerance: opts.tolerance,
            });
        }
    }
    Ok(RootSet {
        polynomial: p.clone(),
        tolerance: opts.tolerance,
        iterations,
        roots: out,
    })
}

fn to_f64(p: &UniPoly) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
}

/// `(p(z), p'(z), sum |c_i| |z|^i)` by Horner.
fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    let mut scale = 0.0;
    let r = z.norm();
    for &a in c.iter().rev() {
        d = d * z + v;
        v = v * z + a;
        scale = scale * r + a.abs();
    }
    (v, d, scale)
}

pub(crate) fn eval_hp(p: &UniPoly, z: &HpComplex) -> HpComplex {
    let mut v = HpComplex::zero();
    for a in p.coeffs().iter().rev() {
        v = v.mul(z).add(&HpComplex::from_int(a));
    }
    v
}

fn backward_error(p: &UniPoly, z: &Complex64) -> f64 {
    let (_, _, scale) = horner(&to_f64(p), *z);
    let v = eval_hp(p, &HpComplex::from_c64(*z)).abs_f64();
    if scale == 0.0 {
        0.0
    } else {
        v / scale
    }
}

/// Simultaneous Aberth–Ehrlich iteration on a square-free polynomial. A root
/// is frozen once `|p(z)|` is below the rounding-error bound of Horner's rule.
fn aberth(p: &UniPoly, max_iterations: usize) -> Result<(Vec<Complex64>, usize), NumericError> {
    let c = to_f64(p);
    let n = c.len() - 1;
    if c.iter().any(|a| !a.is_finite()) {
        return Err(NumericError::NoConvergence {
            iterations: 0,
            detail: "coefficients exceed double range".into(),
        });
    }
    if n == 1 {
        return Ok((vec![Complex64::new(-c[0] / c[1], 0.0)], 0));
    }
    // zero is at most a simple root of a square-free factor
    if c[0] == 0.0 {
        let deflated = UniPoly::new(p.var(), p.coeffs()[1..].to_vec());
        let (mut rest, its) = if n == 1 { (Vec::new(), 0) } else { aberth(&deflated, max_iterations)? };
        rest.push(Complex64::zero());
        return Ok((rest, its));
    }
    let radius = (c[0].abs() / c[n].abs()).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut frozen = vec![false; n];
    let slack = 4.0 * (n as f64 + 1.0) * f64::EPSILON;
    for it in 1..=max_iterations {
        for k in 0..n {
            if frozen[k] {
                continue;
            }
            let (v, d, scale) = horner(&c, z[k]);
            if v.norm() <= slack * scale {
                frozen[k] = true;
                continue;
            }
            let w = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[k] -= step;
            } else {
                z[k] += Complex64::from_polar(radius * 1e-3, it as f64);
            }
        }
        if frozen.iter().all(|&f| f) {
            return Ok((z, it));
        }
    }
    Err(NumericError::NoConvergence {
        iterations: max_iterations,
        detail: format!("Aberth iteration on a degree {n} factor"),
    })
}

/// Aberth sweeps in fixed point until every step is below
/// `2^-(FRAC_BITS-24)`. Keeping the other roots in the correction stops two
/// approximations from collapsing onto one root, which plain Newton allows
/// when the double-precision start is poor.
fn polish(p: &UniPoly, mut z: Vec<HpComplex>) -> Vec<HpComplex> {
    let dp = p.derivative();
    let one = HpComplex::one();
    let done = -(FRAC_BITS as f64) + 24.0;
    for _ in 0..60 {
        let mut largest = f64::NEG_INFINITY;
        for k in 0..z.len() {
            let Some(w) = eval_hp(p, &z[k]).div(&eval_hp(&dp, &z[k])) else {
                continue;
            };
            let mut s = HpComplex::zero();
            for j in (0..z.len()).filter(|&j| j != k) {
                if let Some(t) = one.div(&z[k].sub(&z[j])) {
                    s = s.add(&t);
                }
            }
            let step = w.div(&one.sub(&w.mul(&s))).unwrap_or(w);
            largest = largest.max(step.log2_abs());
            z[k] = z[k].sub(&step);
        }
        if largest < done {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_quadratic() {
        let rs = roots(&UniPoly::from_i64('q', &[1, 1, 1])).unwrap();
        assert_eq!(rs.count(), 2);
        let s = 3f64.sqrt() / 2.0;
        let want = [Complex64::new(-0.5, -s), Complex64::new(-0.5, s)];
        for (r, w) in rs.roots.iter().zip(want) {
            assert!((r.point.value - w).norm() < 1e-15);
        }
        assert!(rs.max_backward_error() < 1e-15);
    }

    #[test]
    fn linear_root() {
        let rs = roots(&UniPoly::from_i64('x', &[-3, 2])).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].point.value, Complex64::new(1.5, 0.0));
    }

    #[test]
    fn multiplicities_and_zero_roots() {
        // q^2 (q - 1)^3 (q + 2)
        let p = UniPoly::from_i64('q', &[0, 0, 1])
            .checked_mul(&UniPoly::from_i64('q', &[-1, 1]).pow(3))
            .unwrap()
            .checked_mul(&UniPoly::from_i64('q', &[2, 1]))
            .unwrap();
        let rs = roots(&p).unwrap();
        assert_eq!(rs.count(), 6);
        let mults: Vec<(f64, usize)> = rs.roots.iter().map(|r| (r.point.value.re, r.multiplicity)).collect();
        assert_eq!(mults, vec![(-2.0, 1), (0.0, 2), (1.0, 3)]);
    }

    #[test]
    fn constant_is_rejected() {
        assert_eq!(roots(&UniPoly::from_i64('q', &[5])), Err(NumericError::ConstantPolynomial));
        assert_eq!(roots(&UniPoly::zero('q')), Err(NumericError::ZeroPolynomial));
    }

    #[test]
    fn polished_roots_are_accurate_beyond_double() {
        let p = UniPoly::from_i64('x', &[-2, 0, 1]);
        let rs = roots(&p).unwrap();
        for r in &rs.roots {
            assert!(eval_hp(&p, &r.point.hp).log2_abs() < -200.0);
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let p = UniPoly::from_i64('x', &[1, 0, 0, 0, 0, 0, 0, 1]);
        let err = roots_with(
            &p,
            &RootOptions {
                max_iterations: 1,
                ..RootOptions::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, NumericError::NoConvergence { .. }));
    }
}
