//! Numeric checks against an exact oracle: the fixed-point roots are dyadic
//! rationals, so `w^n` can be evaluated at them exactly over `Q(i)`.

use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use charvar::families::Family;
use charvar::matword::Mat2;
use charvar::numeric::{
    check_numeric, cusp_residual, longitude_holonomy, parabolic_word, roots, verify_cusp_relation,
    verify_parabolic_conditions, NumericOptions, Precision, RootPoint,
};
use charvar::par::Exec;
use charvar::ring::UniPoly;

/// Exact Gaussian integer; a dyadic point `Z / 2^k` is handled by clearing
/// denominators, so no rational normalization is needed.
#[derive(Clone, Debug, PartialEq)]
struct Gi(BigInt, BigInt);

impl Gi {
    fn add(&self, o: &Gi) -> Gi {
        Gi(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn mul(&self, o: &Gi) -> Gi {
        Gi(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn shl(&self, k: u64) -> Gi {
        Gi(&self.0 << k, &self.1 << k)
    }
    /// `log2 |self / 2^k|`, exact to within one bit.
    fn log2_scaled(&self, k: u64) -> f64 {
        let b = self.0.abs().max(self.1.abs());
        if b.is_zero() {
            return f64::NEG_INFINITY;
        }
        b.bits() as f64 - k as f64
    }
}

/// A dyadic point `Z / 2^bits` taken from the fixed-point root.
struct Dyadic {
    z: Gi,
    bits: u64,
}

fn exact_point(p: &RootPoint) -> Dyadic {
    let (re, im, bits) = p.hp.raw();
    Dyadic {
        z: Gi(re.clone(), im.clone()),
        bits,
    }
}

/// `p(Z / 2^b) * 2^(b d)` with `d = deg p`, returned with its scale `b d`.
fn eval_exact(p: &UniPoly, x: &Dyadic) -> (Gi, u64) {
    let d = p.coeffs().len().saturating_sub(1) as u64;
    let mut v = Gi(BigInt::zero(), BigInt::zero());
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        v = v.mul(&x.z).add(&Gi(c.clone(), BigInt::zero()).shl(x.bits * (d - i as u64)));
    }
    (v, x.bits * d)
}

/// `w^n` by repeated multiplication with the exact inverse, no recursion.
fn direct_power(w: &Mat2<UniPoly>, n: i64) -> Mat2<UniPoly> {
    let base = if n < 0 { w.adjugate() } else { w.clone() };
    let mut acc = Mat2::identity_like(&w.e11);
    for _ in 0..n.unsigned_abs() {
        acc = acc.mul(&base);
    }
    acc
}

#[test]
fn j3_identities_hold_at_every_root_exact_oracle() {
    let f = Family::j3();
    let w = parabolic_word(f);
    for n in -8..=-1 {
        let rep = check_numeric(f, n, &NumericOptions::default()).unwrap();
        let wn = direct_power(&w, n);
        let rs = roots(&f.reducible_slice(n)).unwrap();
        assert_eq!(rs.count() as i64, -3 * n);
        for r in &rs.roots {
            let z = exact_point(&r.point);
            let (w22, k22) = eval_exact(&wn.e22, &z);
            let (w12, k12) = eval_exact(&wn.e12, &z);
            // q w12^2 - 1 over the common denominator 2^(bits + 2 k12)
            let k = z.bits + 2 * k12;
            let det = z.z.mul(&w12).mul(&w12).add(&Gi(-(BigInt::one() << k), BigInt::zero()));
            assert!(w22.log2_scaled(k22) < -160.0, "n={n} oracle |w22| = 2^{}", w22.log2_scaled(k22));
            assert!(det.log2_scaled(k) < -160.0, "n={n} oracle det = 2^{}", det.log2_scaled(k));
        }
        assert!(rep.pass, "n={n}: {:?}", rep.max);
    }
}

#[test]
fn twist_identities_hold_at_every_root() {
    for n in (-8..=8).filter(|n| ![0, 1].contains(n)) {
        let rep = check_numeric(Family::twist(), n, &NumericOptions::default()).unwrap();
        assert!(rep.pass, "twist n={n}: {:?}", rep.max);
    }
}

#[test]
fn slice_roots_up_to_degree_sixty() {
    for n in [-30, -20, -10] {
        let p = Family::twist().reducible_slice(n);
        let rs = roots(&p).unwrap();
        assert_eq!(rs.count() as i64, -2 * n);
        assert!(rs.max_backward_error() < 1e-10);
    }
    for n in [-20, -15] {
        let rs = roots(&Family::j3().reducible_slice(n)).unwrap();
        assert_eq!(rs.count() as i64, -3 * n);
        assert!(rs.max_backward_error() < 1e-10);
    }
}

#[test]
fn tight_tolerances_force_the_extended_rerun() {
    let mut opts = NumericOptions::default();
    let rep = verify_cusp_relation(-8, &opts).unwrap();
    assert!(rep.pass);
    opts.tolerances.identity = 1e-40;
    opts.tolerances.holonomy = 1e-40;
    let rep = verify_cusp_relation(-8, &opts).unwrap();
    assert!(rep.pass, "{:?}", rep.max);
    assert_eq!(rep.extended_roots(), rep.roots.len());
}

#[test]
fn holonomy_shape_and_determinant() {
    let f = Family::j3();
    for n in [-1, -2, -5] {
        for r in roots(&f.reducible_slice(n)).unwrap().roots {
            let h = longitude_holonomy(f, n, &r.point, 1e-8).unwrap();
            assert!(h.lambda.e21.norm() < 1e-8);
            assert!((h.lambda.e12 - (h.alpha + 2.0 * n as f64)).norm() < 1e-8);
            assert!(h.det_residual < 1e-8);
            assert!(h.trace_residual < 1e-8);
        }
    }
}

#[test]
fn perturbed_roots_fail_all_identities() {
    let f = Family::j3();
    for n in [-1, -3] {
        for r in roots(&f.reducible_slice(n)).unwrap().roots {
            let moved = RootPoint::from_c64(r.point.value + 0.1);
            assert!(cusp_residual(f, n, &moved).unwrap() > 1e-3);
            let p = verify_parabolic_conditions(f, n, &moved, 1e-9).unwrap();
            assert!(p.w22 > 1e-3);
            assert_eq!(p.precision, Precision::Extended);
        }
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let seq = NumericOptions {
        exec: Exec::Sequential,
        ..NumericOptions::default()
    };
    let par = NumericOptions {
        exec: Exec::Parallel,
        ..NumericOptions::default()
    };
    let a = check_numeric(Family::j3(), -4, &seq).unwrap();
    let b = check_numeric(Family::j3(), -4, &par).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn j3_numeric_suite_runtime() {
    let t = Instant::now();
    for n in -8..=-1 {
        verify_cusp_relation(n, &NumericOptions::default()).unwrap();
    }
    assert!(t.elapsed().as_secs() < 60);
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-20i64..=20, 2..8)
        .prop_filter("nonconstant", |c| c.last() != Some(&0))
        .prop_map(|c| UniPoly::from_i64('x', &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_count_and_residuals(p in small_poly()) {
        let rs = roots(&p).unwrap();
        prop_assert_eq!(rs.count(), p.deg().unwrap());
        for r in &rs.roots {
            prop_assert!(r.backward_error < 1e-10);
            let (v, k) = eval_exact(&p, &exact_point(&r.point));
            let scale: f64 = p.coeffs().iter().enumerate()
                .map(|(i, c)| c.abs().to_f64().unwrap() * r.point.value.norm().powi(i as i32)).sum();
            prop_assert!(v.log2_scaled(k) <= (1e-10 * scale.max(1.0)).log2());
        }
    }

    #[test]
    fn roots_reassemble_leading_coefficient_product(p in small_poly()) {
        // lc * prod (x - r)^m evaluated at a test point matches p there
        let rs = roots(&p).unwrap();
        let t = Complex64::new(0.37, 1.21);
        let lc = p.leading_coeff().unwrap().to_f64().unwrap();
        let prod = rs.roots.iter().fold(Complex64::new(lc, 0.0), |acc, r| {
            acc * (t - r.point.value).powi(r.multiplicity as i32)
        });
        let direct = p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |v, c| v * t + c.to_f64().unwrap());
        prop_assert!((prod - direct).norm() <= 1e-6 * direct.norm().max(1.0));
    }
}
