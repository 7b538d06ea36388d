//! The commensurability criterion: a hyperbolic, non-fibered, generic knot
//! complement `M` is not commensurable to a fibered knot complement in a
//! `Z/2`-homology sphere when
//!
//! * the total degree of `r_M(x, z)` equals the degree of `r_M(2, 2 - q)`,
//! * `r_M(x, x)` is not monic, and
//! * `r_M(2, 2 - q)` is irreducible over the integers.
//!
//! Hyperbolicity and fiberedness are read from per-family tables; the
//! polynomial hypotheses are computed.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorint::{is_irreducible_z_with, FactorError, IrreducibilityOptions, IrreducibilityVerdict};
use crate::families::{Family, FamilyKind};
use crate::par::Exec;
use crate::ring::{Degree, UniPoly};
use crate::twobridge::{fractions_equivalent, Fraction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("n = {n}: {source}")]
    Factor { n: i64, source: FactorError },
    #[error("n = {n}: slice is reducible, so its degree does not give the trace field")]
    SliceReducible { n: i64 },
    #[error("n = {n}: slice is constant")]
    ConstantSlice { n: i64 },
}

impl CriterionError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, CriterionError::Factor { source: FactorError::ResourceLimit { .. }, .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    fn from_bool(b: bool) -> Tri {
        if b { Tri::Yes } else { Tri::No }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "?",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub value: Tri,
    pub reason: String,
}

fn fact(value: Tri, reason: impl Into<String>) -> Fact {
    Fact {
        value,
        reason: reason.into(),
    }
}

/// Hyperbolicity from the family tables.
pub fn hyperbolic_fact(kind: FamilyKind, n: i64) -> Fact {
    match kind {
        FamilyKind::Twist => match n {
            0 => fact(Tri::No, "unknot"),
            1 => fact(Tri::No, "trefoil (torus knot)"),
            _ => fact(Tri::Yes, "twist knots other than the unknot and trefoil are hyperbolic"),
        },
        FamilyKind::J3 => {
            if n == 0 {
                return fact(Tri::No, "unknot");
            }
            // a 2-bridge knot p/q is a torus knot iff p = +-1 mod q
            let f = Fraction::new(4 * n - 1, 6 * n - 1).expect("6n - 1 is odd");
            let torus = fractions_equivalent(&f, &Fraction::new(1, f.q().clone()).unwrap())
                || fractions_equivalent(&f, &Fraction::new(-1, f.q().clone()).unwrap());
            if torus {
                fact(Tri::No, format!("2-bridge torus knot {}", f.normalized()))
            } else {
                fact(Tri::Yes, format!("2-bridge knot {} is not a torus knot", f.normalized()))
            }
        }
        FamilyKind::Custom => fact(Tri::Unknown, "no classification for custom families"),
    }
}

/// Fiberedness from the family tables.
pub fn fibered_fact(kind: FamilyKind, n: i64) -> Fact {
    match kind {
        FamilyKind::Twist => match n {
            0 => fact(Tri::Yes, "unknot"),
            1 => fact(Tri::Yes, "trefoil"),
            -1 => fact(Tri::Yes, "figure-eight knot"),
            _ => fact(Tri::No, "only the unknot, trefoil and figure-eight twist knots are fibered"),
        },
        FamilyKind::J3 => {
            if n >= 0 {
                fact(Tri::Yes, "J(3, 2n) with n >= 0 is a band sum of Hopf links")
            } else {
                fact(Tri::No, "Alexander polynomial 2 - 3t + ... + 2 is not monic")
            }
        }
        FamilyKind::Custom => fact(Tri::Unknown, "no classification for custom families"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CuspTrace {
    /// Cusp field equals trace field by a known theorem for this family.
    Proved,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genericity {
    pub trace_field_degree: usize,
    pub cusp_equals_trace: CuspTrace,
    pub generic: Tri,
    pub justification: String,
}

fn genericity_from_degree(kind: FamilyKind, degree: usize) -> Genericity {
    let (cusp_equals_trace, why) = match kind {
        FamilyKind::Twist => (CuspTrace::Proved, "cusp field equals trace field for twist knots (Neumann-Reid)"),
        FamilyKind::J3 => (
            CuspTrace::Proved,
            "cusp field equals trace field for J(3, 2n): alpha = -(2q + 6)/(1 + q) at every slice root",
        ),
        FamilyKind::Custom => (CuspTrace::Unknown, "cusp field not identified for custom families"),
    };
    let generic = match cusp_equals_trace {
        CuspTrace::Proved => Tri::from_bool(degree > 2),
        CuspTrace::Unknown => Tri::Unknown,
    };
    let verdict = if degree > 2 {
        "degree > 2, so the cusp field is neither Q(i) nor Q(sqrt -3)"
    } else {
        "degree <= 2 does not exclude Q(i) or Q(sqrt -3)"
    };
    Genericity {
        trace_field_degree: degree,
        cusp_equals_trace,
        generic,
        justification: format!("{why}; {verdict}"),
    }
}

/// Trace-field degree from the irreducible slice, and whether it forces
/// genericity.
pub fn genericity_report(family: &Family, n: i64) -> Result<Genericity, CriterionError> {
    let slice = family.reducible_slice(n);
    let d = slice.deg().filter(|&d| d > 0).ok_or(CriterionError::ConstantSlice { n })?;
    let v = is_irreducible_z_with(&slice, &IrreducibilityOptions::default())
        .map_err(|source| CriterionError::Factor { n, source })?;
    if !v.is_irreducible() {
        return Err(CriterionError::SliceReducible { n });
    }
    Ok(genericity_from_degree(family.kind(), d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Conclusion {
    NotCommensurableToFibered,
    CriterionInapplicable { reasons: Vec<String> },
}

impl Conclusion {
    pub fn is_not_commensurable(&self) -> bool {
        matches!(self, Conclusion::NotCommensurableToFibered)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommensurabilityReport {
    pub family: String,
    pub n: i64,
    pub hyperbolic: Fact,
    pub fibered: Fact,
    pub degree_total: Degree,
    pub degree_slice: Degree,
    pub degrees_equal: bool,
    pub diagonal: UniPoly,
    /// Monic after removing content and sign: a rational root of `r(x, x)`
    /// is then an integer.
    pub diagonal_monic: bool,
    pub slice_verdict: Option<IrreducibilityVerdict>,
    pub genericity: Option<Genericity>,
    pub conclusion: Conclusion,
}

pub fn check_commensurability(family: &Family, n: i64) -> Result<CommensurabilityReport, CriterionError> {
    check_commensurability_with(family, n, &IrreducibilityOptions::default())
}

pub fn check_commensurability_with(
    family: &Family,
    n: i64,
    opts: &IrreducibilityOptions,
) -> Result<CommensurabilityReport, CriterionError> {
    let kind = family.kind();
    let hyperbolic = hyperbolic_fact(kind, n);
    let fibered = fibered_fact(kind, n);
    let r = family.char_poly(n);
    let slice = family.reducible_slice(n);
    let degree_total = r.total_degree();
    let degree_slice = slice.degree();
    let degrees_equal = degree_total == degree_slice;
    let diagonal = family.diagonal_poly(n);
    let diagonal_monic = diagonal.primitive_part().leading_coeff().is_some_and(|c| *c == 1.into());
    let slice_verdict = match slice.deg() {
        Some(d) if d > 0 => Some(
            is_irreducible_z_with(&slice, opts).map_err(|source| CriterionError::Factor { n, source })?,
        ),
        _ => None,
    };
    let irreducible = slice_verdict.as_ref().is_some_and(|v| v.is_irreducible());
    let genericity = irreducible.then(|| genericity_from_degree(kind, slice.deg().unwrap()));

    let mut reasons = Vec::new();
    if hyperbolic.value != Tri::Yes {
        reasons.push(format!("not known hyperbolic ({})", hyperbolic.reason));
    }
    if fibered.value != Tri::No {
        reasons.push(format!("not known non-fibered ({})", fibered.reason));
    }
    if !degrees_equal {
        reasons.push(format!("total degree {degree_total} differs from slice degree {degree_slice}"));
    }
    if diagonal_monic {
        reasons.push(format!("diagonal {diagonal} is monic"));
    }
    match &slice_verdict {
        None => reasons.push("slice is constant".into()),
        Some(v) if !v.is_irreducible() => reasons.push("slice is reducible".into()),
        _ => {}
    }
    match &genericity {
        Some(g) if g.generic == Tri::Yes => {}
        Some(g) => reasons.push(format!("not known generic ({})", g.justification)),
        None => reasons.push("genericity undetermined".into()),
    }
    let conclusion = if reasons.is_empty() {
        Conclusion::NotCommensurableToFibered
    } else {
        Conclusion::CriterionInapplicable { reasons }
    };
    Ok(CommensurabilityReport {
        family: family.name().to_owned(),
        n,
        hyperbolic,
        fibered,
        degree_total,
        degree_slice,
        degrees_equal,
        diagonal,
        diagonal_monic,
        slice_verdict,
        genericity,
        conclusion,
    })
}

/// Reports for every `n`, in order.
pub fn check_range(
    family: &Family,
    ns: &[i64],
    opts: &IrreducibilityOptions,
) -> Vec<Result<CommensurabilityReport, CriterionError>> {
    opts.exec.map(ns, |&n| check_commensurability_with(family, n, opts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalCheck {
    pub checked: usize,
    /// Indices where `r_n(x, x) != n x - (2n - 1)`.
    pub mismatches: Vec<i64>,
}

impl DiagonalCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the twist diagonal with `n x - (2n - 1)`.
pub fn diagonal_closed_form_check(ns: &[i64], exec: Exec) -> DiagonalCheck {
    let ok = exec.map(ns, |&n| {
        Family::twist().diagonal_poly(n) == UniPoly::from_i64('x', &[1 - 2 * n, n])
    });
    DiagonalCheck {
        checked: ns.len(),
        mismatches: ns.iter().zip(ok).filter(|(_, ok)| !ok).map(|(&n, _)| n).collect(),
    }
}

const HEADER: [(&str, usize); 11] = [
    ("family", 7),
    ("n", 5),
    ("hyp", 4),
    ("fib", 4),
    ("deg r", 6),
    ("deg s", 6),
    ("lc diag", 9),
    ("irred", 6),
    ("method", 15),
    ("generic", 8),
    ("conclusion", 0),
];

/// Fixed-width table, one row per report.
pub fn render_table(reports: &[CommensurabilityReport]) -> String {
    let mut out = String::new();
    let row = |cells: [String; 11], out: &mut String| {
        let line: Vec<String> = cells
            .iter()
            .zip(HEADER)
            .map(|(c, (_, w))| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join(" ").trim_end());
    };
    row(HEADER.map(|(h, _)| h.to_owned()), &mut out);
    for r in reports {
        let (irred, method) = match &r.slice_verdict {
            Some(v) => (
                if v.is_irreducible() { "yes" } else { "no" }.to_owned(),
                serde_json::to_value(v.transcript.method)
                    .ok()
                    .and_then(|m| m.as_str().map(str::to_owned))
                    .unwrap_or_default(),
            ),
            None => ("-".into(), "-".into()),
        };
        let lc = r.diagonal.leading_coeff().map(|c| c.to_string()).unwrap_or("0".into());
        let conclusion = match &r.conclusion {
            Conclusion::NotCommensurableToFibered => "not-commensurable-to-fibered".to_owned(),
            Conclusion::CriterionInapplicable { reasons } => format!("inapplicable: {}", reasons[0]),
        };
        row(
            [
                r.family.clone(),
                r.n.to_string(),
                r.hyperbolic.value.to_string(),
                r.fibered.value.to_string(),
                r.degree_total.to_string(),
                r.degree_slice.to_string(),
                lc,
                irred,
                method,
                r.genericity.as_ref().map(|g| g.generic.to_string()).unwrap_or("-".into()),
                conclusion,
            ],
            &mut out,
        );
    }
    out
}
