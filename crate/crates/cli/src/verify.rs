//! Invariant suites behind `charvar verify`.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use charvar::families::{entry_identities_j3, xz_to_mq, Family};
use charvar::numeric::{check_numeric, verify_cusp_relation, NumericReport, Tolerances};
use charvar::ring::UniPoly;
use charvar::twobridge::j3_fraction;

use crate::args::{named, FamilyName, GlobalOpts, NRange};
use crate::commands::emit;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// `r_n(x, z)` maps to `R_n(m, q)` under the change of variables.
    Substitution,
    /// Twist diagonal equals `n x - (2n - 1)`.
    Diagonal,
    /// Entry identities of `w^n` for J(3, 2n).
    Identities,
    /// Cusp relation at every slice root of J(3, 2n), n < 0.
    Cusp,
    /// Longitude holonomy at every slice root.
    Holonomy,
    /// Continued-fraction forms of J(3, 2n).
    Fractions,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Substitution => "substitution",
            Suite::Diagonal => "diagonal",
            Suite::Identities => "identities",
            Suite::Cusp => "cusp",
            Suite::Holonomy => "holonomy",
            Suite::Fractions => "fractions",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyCase {
    pub family: String,
    pub n: i64,
    pub pass: bool,
    /// Largest residual for numeric suites.
    pub max_residual: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub suite: Suite,
    pub range: String,
    pub tolerances: Tolerances,
    pub cases: Vec<VerifyCase>,
    pub pass: bool,
    pub max_residual: Option<f64>,
    /// Command that reruns the first failing case alone.
    pub reproducer: Option<String>,
}

fn exact(family: &Family, n: i64, pass: bool, detail: String) -> VerifyCase {
    VerifyCase {
        family: family.name().to_owned(),
        n,
        pass,
        max_residual: None,
        detail,
    }
}

fn numeric_case(r: &NumericReport, pick: impl Fn(&NumericReport) -> Option<f64>) -> VerifyCase {
    let max = pick(r);
    VerifyCase {
        family: r.family.clone(),
        n: r.n,
        pass: r.pass,
        max_residual: max,
        detail: format!("{} roots, {} in extended precision", r.roots.len(), r.extended_roots()),
    }
}

fn families(family: Option<FamilyName>, default: &[FamilyName]) -> Vec<&'static Family> {
    match family {
        Some(f) => vec![named(f)],
        None => default.iter().map(|f| named(*f)).collect(),
    }
}

fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg.into()))
    }
}

pub fn run(g: &GlobalOpts, suite: Suite, range: &NRange, family: Option<FamilyName>) -> Result<(), CliError> {
    let ns = range.values();
    let exec = g.exec();
    let opts = g.numeric();
    let mut cases = Vec::new();
    match suite {
        Suite::Substitution => {
            for f in families(family, &[FamilyName::Twist, FamilyName::J3]) {
                cases.extend(exec.map(&ns, |&n| {
                    let ok = xz_to_mq(&f.char_poly(n)) == *f.riley_poly(n);
                    exact(f, n, ok, "exact".into())
                }));
            }
        }
        Suite::Diagonal => {
            require(family.is_none_or(|f| f == FamilyName::Twist), "the diagonal closed form is for the twist family")?;
            let f = Family::twist();
            cases.extend(exec.map(&ns, |&n| {
                let d = f.diagonal_poly(n);
                let want = UniPoly::from_i64('x', &[1 - 2 * n, n]);
                exact(f, n, d == want, format!("r_n(x, x) = {d}"))
            }));
        }
        Suite::Identities => {
            require(family.is_none_or(|f| f == FamilyName::J3), "entry identities are for the j3 family")?;
            let f = Family::j3();
            let ids = exec.try_map(&ns, |&n| entry_identities_j3(n))?;
            cases.extend(ids.into_iter().map(|v| {
                let detail = format!(
                    "w21 + q w12 = 0: {}; second identity: {}; w12 + q w21 = 0: {}",
                    v.swapped_first, v.second, v.printed_first
                );
                exact(f, v.n, v.swapped_first && v.second, detail)
            }));
        }
        Suite::Cusp => {
            require(family.is_none_or(|f| f == FamilyName::J3), "the cusp relation is for the j3 family")?;
            require(range.hi < 0, "the cusp relation needs n < 0")?;
            let reports = exec.try_map(&ns, |&n| verify_cusp_relation(n, &opts))?;
            cases.extend(reports.iter().map(|r| {
                numeric_case(r, |r| r.max.as_ref().and_then(|m| m.cusp))
            }));
        }
        Suite::Holonomy => {
            for f in families(family, &[FamilyName::J3]) {
                let reports = exec.try_map(&ns, |&n| check_numeric(f, n, &opts))?;
                cases.extend(reports.iter().map(|r| numeric_case(r, |r| r.max.as_ref().map(|m| m.holonomy))));
            }
        }
        Suite::Fractions => {
            require(ns.iter().all(|&n| n != 0), "fractions need n != 0")?;
            let f = Family::j3();
            for &n in &ns {
                let r = j3_fraction(n)?;
                let detail = format!("{} ~ {}", r.first, r.second);
                cases.push(exact(f, n, r.all_consistent(), detail));
            }
        }
    }
    let pass = cases.iter().all(|c| c.pass);
    let max_residual = cases.iter().filter_map(|c| c.max_residual).reduce(f64::max);
    let reproducer = cases.iter().find(|c| !c.pass).map(|c| {
        let fam = match suite {
            Suite::Substitution | Suite::Holonomy => format!(" --family {}", c.family),
            _ => String::new(),
        };
        format!("charvar verify {} --n {}{fam}", suite.name(), c.n)
    });
    let summary = VerifySummary {
        suite,
        range: range.to_string(),
        tolerances: opts.tolerances,
        cases,
        pass,
        max_residual,
        reproducer,
    };
    emit(g, &summary, || {
        let mut out = format!(
            "verify {} --n {}: {} ({} cases",
            suite.name(),
            range,
            if pass { "pass" } else { "FAIL" },
            summary.cases.len()
        );
        if let Some(m) = max_residual {
            out.push_str(&format!(", max residual {m:.3e}"));
        }
        out.push_str(")\n");
        for c in summary.cases.iter().filter(|c| !c.pass) {
            out.push_str(&format!("  FAIL {} n = {}: {}\n", c.family, c.n, c.detail));
        }
        if let Some(r) = &summary.reproducer {
            out.push_str(&format!("  reproduce with: {r}\n"));
        }
        out
    })?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Failed(format!("verify {} failed", suite.name())))
    }
}
