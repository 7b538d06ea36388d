use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::hp::HpComplex;
use super::roots::{roots_with, RootOptions, RootPoint};
use super::{c64_serde, NumericError, DEFAULT_HOLONOMY_TOL, DEFAULT_IDENTITY_TOL, DEFAULT_ROOT_TOL};
use crate::families::{Family, FamilyKind};
use crate::matword::{matrix_power_recursive, parabolic_images, Mat2, MatError, Scalar};
use crate::par::Exec;
use crate::ring::UniPoly;

/// Absolute tolerances. Recorded in every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Backward error of slice roots.
    pub root: f64,
    /// `|w22|`, `|q w12^2 - 1|` and the cusp relation.
    pub identity: f64,
    /// Entrywise distance of the longitude from its predicted form.
    pub holonomy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root: DEFAULT_ROOT_TOL,
            identity: DEFAULT_IDENTITY_TOL,
            holonomy: DEFAULT_HOLONOMY_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    /// 256-bit fixed point.
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericOptions {
    pub tolerances: Tolerances,
    pub max_iterations: usize,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            tolerances: Tolerances::default(),
            max_iterations: RootOptions::default().max_iterations,
            exec: Exec::default(),
        }
    }
}

/// A complex 2×2 matrix with `[re, im]` entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMat {
    #[serde(with = "c64_serde")]
    pub e11: Complex64,
    #[serde(with = "c64_serde")]
    pub e12: Complex64,
    #[serde(with = "c64_serde")]
    pub e21: Complex64,
    #[serde(with = "c64_serde")]
    pub e22: Complex64,
}

impl ComplexMat {
    fn from_mat<T: NumField>(m: &Mat2<T>) -> Self {
        ComplexMat {
            e11: m.e11.c64(),
            e12: m.e12.c64(),
            e21: m.e21.c64(),
            e22: m.e22.c64(),
        }
    }
}

/// Coefficient domains the checks run in.
trait NumField: Scalar + Send {
    fn from_big(c: &BigInt) -> Self;
    fn from_point(p: &RootPoint) -> Self;
    fn c64(&self) -> Complex64;
    const PRECISION: Precision;
}

impl NumField for Complex64 {
    fn from_big(c: &BigInt) -> Self {
        Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }
    fn from_point(p: &RootPoint) -> Self {
        p.value
    }
    fn c64(&self) -> Complex64 {
        *self
    }
    const PRECISION: Precision = Precision::Double;
}

impl NumField for HpComplex {
    fn from_big(c: &BigInt) -> Self {
        HpComplex::from_int(c)
    }
    fn from_point(p: &RootPoint) -> Self {
        p.hp.clone()
    }
    fn c64(&self) -> Complex64 {
        self.to_c64()
    }
    const PRECISION: Precision = Precision::Extended;
}

fn horner<T: NumField>(p: &UniPoly, z: &T) -> T {
    let mut v = z.zero_like();
    for a in p.coeffs().iter().rev() {
        v = v.times(z).plus(&T::from_big(a));
    }
    v
}

/// The word `w` of a family at `m = 1`, entries in `Z[q]`.
pub fn parabolic_word(family: &Family) -> Mat2<UniPoly> {
    let (a, b) = parabolic_images();
    family
        .spec()
        .word
        .eval(&a, &b)
        .expect("parabolic meridians have unit determinant")
}

/// Everything the checks need at one point, in one precision.
struct Evaluation {
    precision: Precision,
    alpha: Complex64,
    lambda: ComplexMat,
    w22: f64,
    det_residual: f64,
    cusp: f64,
    holonomy: f64,
    longitude_trace: f64,
    longitude_det: f64,
}

fn evaluate<T: NumField>(w1: &Mat2<UniPoly>, n: i64, point: &RootPoint) -> Result<Evaluation, MatError> {
    let q = T::from_point(point);
    let int = |k: i64| T::from_big(&BigInt::from(k));
    let w = w1.map(|e| horner(e, &q));
    let wn = matrix_power_recursive(&w, n)?;
    let two = int(2);
    let alpha = two.times(&wn.e11).times(&wn.e12);
    let diag = wn.e11.times(&wn.e22).minus(&q.times(&wn.e12).times(&wn.e12));
    let lower = two.times(&q).times(&wn.e11).times(&wn.e22).negated();
    let left = Mat2::new(diag.clone(), alpha.clone(), lower, diag);
    let lambda = left.mul(&Mat2::new(int(1), int(-2 * n), int(0), int(1)));
    let expected = Mat2::new(int(-1), alpha.plus(&int(2 * n)), int(0), int(-1));
    let diff = lambda.sub(&expected);
    let holonomy = diff.entries().iter().map(|e| e.c64().norm()).fold(0.0, f64::max);
    // alpha + alpha q + 2q + 6
    let cusp = alpha
        .plus(&alpha.times(&q))
        .plus(&two.times(&q))
        .plus(&int(6));
    Ok(Evaluation {
        precision: T::PRECISION,
        alpha: alpha.c64(),
        lambda: ComplexMat::from_mat(&lambda),
        w22: wn.e22.c64().norm(),
        det_residual: q.times(&wn.e12).times(&wn.e12).minus(&int(1)).c64().norm(),
        cusp: cusp.c64().norm(),
        holonomy,
        longitude_trace: lambda.trace().plus(&int(2)).c64().norm(),
        longitude_det: lambda.det().minus(&int(1)).c64().norm(),
    })
}

/// Double precision first; fixed point when `ok` rejects the double result
/// or the double recursion cannot even certify a unit determinant.
fn evaluate_adaptive(
    w1: &Mat2<UniPoly>,
    n: i64,
    point: &RootPoint,
    ok: impl Fn(&Evaluation) -> bool,
) -> Result<Evaluation, MatError> {
    match evaluate::<Complex64>(w1, n, point) {
        Ok(e) if ok(&e) => Ok(e),
        _ => evaluate::<HpComplex>(w1, n, point),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParabolicResiduals {
    pub n: i64,
    #[serde(with = "c64_serde")]
    pub q_value: Complex64,
    /// `|w^n_22(q)|`.
    pub w22: f64,
    /// `|q w^n_12(q)^2 - 1|`.
    pub det_residual: f64,
    pub precision: Precision,
}

/// Evaluates `w^n` at `m = 1`, `q = point` and returns `|w22|` and
/// `|q w12^2 - 1|`, both of which vanish at roots of the slice.
pub fn verify_parabolic_conditions(
    family: &Family,
    n: i64,
    point: &RootPoint,
    tolerance: f64,
) -> Result<ParabolicResiduals, NumericError> {
    let e = evaluate_adaptive(&parabolic_word(family), n, point, |e| {
        e.w22 <= tolerance && e.det_residual <= tolerance
    })?;
    Ok(ParabolicResiduals {
        n,
        q_value: point.value,
        w22: e.w22,
        det_residual: e.det_residual,
        precision: e.precision,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolonomyCheck {
    pub n: i64,
    #[serde(with = "c64_serde")]
    pub q_value: Complex64,
    #[serde(with = "c64_serde")]
    pub alpha: Complex64,
    pub lambda: ComplexMat,
    /// Max entrywise distance from `[[-1, alpha + 2n], [0, -1]]`.
    pub residual: f64,
    /// `|trace lambda + 2|`.
    pub trace_residual: f64,
    /// `|det lambda - 1|`.
    pub det_residual: f64,
    pub precision: Precision,
}

/// The longitude `[[A, 2 w11 w12], [-2q w11 w22, A]] [[1, -2n], [0, 1]]` with
/// `A = w11 w22 - q w12^2`, evaluated at `m = 1`, `q = point`.
pub fn longitude_holonomy(
    family: &Family,
    n: i64,
    point: &RootPoint,
    tolerance: f64,
) -> Result<HolonomyCheck, NumericError> {
    let e = evaluate_adaptive(&parabolic_word(family), n, point, |e| {
        e.holonomy <= tolerance && e.longitude_trace <= tolerance && e.longitude_det <= tolerance
    })?;
    Ok(HolonomyCheck {
        n,
        q_value: point.value,
        alpha: e.alpha,
        lambda: e.lambda,
        residual: e.holonomy,
        trace_residual: e.longitude_trace,
        det_residual: e.longitude_det,
        precision: e.precision,
    })
}

/// `|alpha + alpha q + 2q + 6|` with `alpha = 2 w11 w12`, at any `q`.
pub fn cusp_residual(family: &Family, n: i64, point: &RootPoint) -> Result<f64, NumericError> {
    Ok(evaluate::<HpComplex>(&parabolic_word(family), n, point)?.cusp)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub w22: f64,
    pub det_residual: f64,
    /// `None` for families without the relation and for `q` in `{0, -1}`.
    pub cusp: Option<f64>,
    pub holonomy: f64,
    pub longitude_trace: f64,
    pub longitude_det: f64,
}

impl Residuals {
    fn max(&self, o: &Residuals) -> Residuals {
        Residuals {
            w22: self.w22.max(o.w22),
            det_residual: self.det_residual.max(o.det_residual),
            cusp: match (self.cusp, o.cusp) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
            holonomy: self.holonomy.max(o.holonomy),
            longitude_trace: self.longitude_trace.max(o.longitude_trace),
            longitude_det: self.longitude_det.max(o.longitude_det),
        }
    }

    fn within(&self, t: &Tolerances) -> bool {
        self.w22 <= t.identity
            && self.det_residual <= t.identity
            && self.cusp.is_none_or(|c| c <= t.identity)
            && self.holonomy <= t.holonomy
            && self.longitude_trace <= t.holonomy
            && self.longitude_det <= t.holonomy
    }
}

/// Per-root data: `q_n`, `alpha_n = 2 w11 w12` and every residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootCheck {
    pub index: usize,
    #[serde(with = "c64_serde")]
    pub q_value: Complex64,
    pub multiplicity: usize,
    pub backward_error: f64,
    #[serde(with = "c64_serde")]
    pub alpha: Complex64,
    pub lambda: ComplexMat,
    pub residuals: Residuals,
    pub precision: Precision,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub family: String,
    pub n: i64,
    pub slice: UniPoly,
    pub tolerances: Tolerances,
    pub roots: Vec<RootCheck>,
    pub max: Option<Residuals>,
    pub pass: bool,
}

impl NumericReport {
    pub fn extended_roots(&self) -> usize {
        self.roots.iter().filter(|r| r.precision == Precision::Extended).count()
    }
}

/// Below this, `q` counts as `0` or `-1` for the cusp relation.
const DEGENERATE_Q: f64 = 1e-12;

fn is_degenerate(q: Complex64) -> bool {
    q.norm() < DEGENERATE_Q || (q + 1.0).norm() < DEGENERATE_Q
}

/// Roots of `r_n(2, 2 - q)` and all numeric identities at each of them.
/// The cusp relation is included for the J(3,2n) family only.
pub fn check_numeric(family: &Family, n: i64, opts: &NumericOptions) -> Result<NumericReport, NumericError> {
    let slice = family.reducible_slice(n);
    let tol = opts.tolerances;
    let root_opts = RootOptions {
        tolerance: tol.root,
        max_iterations: opts.max_iterations,
    };
    let roots = if slice.deg().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        roots_with(&slice, &root_opts)?.roots
    };
    let w1 = parabolic_word(family);
    let with_cusp = family.kind() == FamilyKind::J3;
    let indexed: Vec<(usize, &super::Root)> = roots.iter().enumerate().collect();
    let checks = opts.exec.try_map(&indexed, |&(index, root)| {
        let residuals = |e: &Evaluation| Residuals {
            w22: e.w22,
            det_residual: e.det_residual,
            cusp: (with_cusp && !is_degenerate(root.point.value)).then_some(e.cusp),
            holonomy: e.holonomy,
            longitude_trace: e.longitude_trace,
            longitude_det: e.longitude_det,
        };
        let e = evaluate_adaptive(&w1, n, &root.point, |e| residuals(e).within(&tol))?;
        let residuals = residuals(&e);
        Ok::<_, NumericError>(RootCheck {
            index,
            q_value: root.point.value,
            multiplicity: root.multiplicity,
            backward_error: root.backward_error,
            alpha: e.alpha,
            lambda: e.lambda,
            pass: residuals.within(&tol),
            residuals,
            precision: e.precision,
        })
    })?;
    let max = checks.iter().map(|c| c.residuals.clone()).reduce(|a, b| a.max(&b));
    Ok(NumericReport {
        family: family.name().to_owned(),
        n,
        slice: (*slice).clone(),
        tolerances: tol,
        pass: checks.iter().all(|c| c.pass),
        roots: checks,
        max,
    })
}

/// [`check_numeric`] for the J(3,2n) family, `n < 0`, refusing roots at
/// `q = 0` or `q = -1` where the relation is not derived.
pub fn verify_cusp_relation(n: i64, opts: &NumericOptions) -> Result<NumericReport, NumericError> {
    let family = Family::j3();
    if n >= 0 {
        return Err(NumericError::OutsideCuspRange {
            family: family.name().to_owned(),
            n,
        });
    }
    let report = check_numeric(family, n, opts)?;
    if let Some(r) = report.roots.iter().find(|r| is_degenerate(r.q_value)) {
        return Err(NumericError::DegenerateRoot {
            index: r.index,
            q: format!("{}", r.q_value),
        });
    }
    Ok(report)
}

/// [`check_numeric`] over many `n`, in input order.
pub fn check_numeric_range(
    family: &Family,
    ns: &[i64],
    opts: &NumericOptions,
) -> Vec<Result<NumericReport, NumericError>> {
    opts.exec.map(ns, |&n| check_numeric(family, n, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabolic_word_matches_hand_product() {
        let w = parabolic_word(Family::j3());
        assert_eq!(w.e22, UniPoly::from_i64('q', &[1, 1, 1]));
        assert_eq!(w.e12, UniPoly::from_i64('q', &[1, 2, 1]));
    }

    #[test]
    fn j3_minus_one_all_identities() {
        let rep = verify_cusp_relation(-1, &NumericOptions::default()).unwrap();
        assert_eq!(rep.roots.len(), 3);
        assert!(rep.pass, "{rep:?}");
        assert!(rep.roots.iter().all(|r| r.backward_error < 1e-12));
        assert!(rep.roots.iter().all(|r| r.residuals.cusp.is_some()));
    }

    #[test]
    fn negative_controls() {
        let f = Family::j3();
        let one = RootPoint::from_c64(Complex64::new(1.0, 0.0));
        let r = verify_parabolic_conditions(f, -1, &one, 1e-9).unwrap();
        // w22(1) = 3 for n = -1 at q = 1
        assert!(r.w22 > 1.0);
        assert_eq!(r.precision, Precision::Extended);
        let rep = check_numeric(f, -3, &NumericOptions::default()).unwrap();
        for root in &rep.roots {
            let moved = RootPoint::from_c64(root.q_value + 0.1);
            assert!(cusp_residual(f, -3, &moved).unwrap() > 1e-3);
        }
    }

    #[test]
    fn positive_n_is_outside_cusp_range() {
        assert!(matches!(
            verify_cusp_relation(2, &NumericOptions::default()),
            Err(NumericError::OutsideCuspRange { .. })
        ));
    }

    #[test]
    fn report_json_round_trip() {
        let rep = check_numeric(Family::twist(), -2, &NumericOptions::default()).unwrap();
        assert!(rep.roots.iter().all(|r| r.residuals.cusp.is_none()));
        let s = serde_json::to_string(&rep).unwrap();
        let back: NumericReport = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
