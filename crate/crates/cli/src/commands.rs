use std::fmt::Write as _;

use serde::Serialize;

use charvar::criterion::{check_range, genericity_report, render_table, Tri};
use charvar::factorint::{factor_mod_p, factor_z_with, is_irreducible_z_with, rational_roots};
use charvar::families::{alexander_j3, entry_identities_j3, nonintegral_trace, Family};
use charvar::matword::{matrix_power_recursive, parabolic_images, riley_images, GroupWord, Mat2, Scalar};
use charvar::numeric::{check_numeric, roots_with, verify_cusp_relation, Complex64, NumericReport, RootOptions};
use charvar::ring::{ctx_mq, LaurentPoly};
use charvar::twobridge::{continued_fraction_value, fractions_equivalent, j3_fraction, Fraction};

use crate::args::{Format, GlobalOpts, NRange};
use crate::cli::{Cli, Command};
use crate::error::CliError;
use crate::records::*;
use crate::verify;

/// Prints `value` as pretty JSON or `text` as is.
pub fn emit<T: Serialize>(g: &GlobalOpts, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    match g.format {
        Format::Json => {
            let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Failed(e.to_string()))?;
            println!("{s}");
        }
        Format::Text => {
            let t = text();
            print!("{t}");
            if !t.ends_with('\n') {
                println!();
            }
        }
    }
    Ok(())
}

/// One text line per record; a bare value when the range is a single index.
fn lines<T>(range: &NRange, items: &[T], n_of: impl Fn(&T) -> i64, text: impl Fn(&T) -> String) -> String {
    let mut out = String::new();
    for it in items {
        if range.is_single() {
            let _ = writeln!(out, "{}", text(it));
        } else {
            let _ = writeln!(out, "n = {}: {}", n_of(it), text(it));
        }
    }
    out
}

fn poly_records<P: Clone + std::fmt::Display + Send>(
    g: &GlobalOpts,
    family: &Family,
    range: &NRange,
    f: impl Fn(i64) -> Result<P, CliError> + Sync + Send,
) -> Result<Vec<PolyRecord<P>>, CliError> {
    g.exec().try_map(&range.values(), |&n| {
        let p = f(n)?;
        Ok(PolyRecord {
            family: family.name().to_owned(),
            n,
            text: p.to_string(),
            polynomial: p,
        })
    })
}

fn emit_polys<P: Serialize>(g: &GlobalOpts, range: &NRange, recs: &[PolyRecord<P>]) -> Result<(), CliError> {
    emit(g, &recs, || lines(range, recs, |r| r.n, |r| r.text.clone()))
}

fn meridian_value(at: &str) -> Result<i64, CliError> {
    match at.replace(' ', "").as_str() {
        "m=1" => Ok(1),
        "m=-1" => Ok(-1),
        other => Err(CliError::Usage(format!("--at {other}: only m=1 and m=-1 keep integer coefficients"))),
    }
}

fn fmt_c(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.12} {sign} {:.12}i", z.re, z.im.abs())
}

fn numeric_text(reports: &[NumericReport], holonomy: bool) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "{} n = {}: {} roots, {}",
            r.family,
            r.n,
            r.roots.len(),
            if r.pass { "pass" } else { "FAIL" }
        );
        for c in &r.roots {
            let prec = serde_json::to_value(c.precision).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
            if holonomy {
                let l = &c.lambda;
                let _ = writeln!(
                    out,
                    "  [{}] q = {}  lambda = [[{}, {}], [{}, {}]]  residual {:.2e}  trace+2 {:.2e}  ({prec})",
                    c.index,
                    fmt_c(c.q_value),
                    fmt_c(l.e11),
                    fmt_c(l.e12),
                    fmt_c(l.e21),
                    fmt_c(l.e22),
                    c.residuals.holonomy,
                    c.residuals.longitude_trace,
                );
            } else {
                let cusp = c.residuals.cusp.map(|v| format!("{v:.2e}")).unwrap_or("-".into());
                let _ = writeln!(
                    out,
                    "  [{}] q = {}  alpha = {}  |w22| {:.2e}  |q w12^2 - 1| {:.2e}  cusp {cusp}  ({prec})",
                    c.index,
                    fmt_c(c.q_value),
                    fmt_c(c.alpha),
                    c.residuals.w22,
                    c.residuals.det_residual,
                );
            }
        }
    }
    out
}

fn numeric_failures(reports: &[NumericReport]) -> Result<(), CliError> {
    match reports.iter().find(|r| !r.pass) {
        Some(r) => Err(CliError::Failed(format!("residual above tolerance at n = {}", r.n))),
        None => Ok(()),
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Riley { family, range, at } => {
            let fam = family.resolve()?;
            let r = &range.n;
            match at {
                None => {
                    let recs = poly_records(g, &fam, r, |n| Ok((*fam.riley_poly(n)).clone()))?;
                    emit_polys(g, r, &recs)
                }
                Some(at) => {
                    let m = meridian_value(at)?;
                    let ctx = ctx_mq();
                    let mv = LaurentPoly::constant(&ctx, m);
                    let recs = poly_records(g, &fam, r, |n| {
                        fam.riley_poly(n)
                            .substitute(&[("m", &mv)], &ctx)
                            .and_then(|p| p.to_unipoly("q"))
                            .map_err(|e| CliError::Failed(e.to_string()))
                    })?;
                    emit_polys(g, r, &recs)
                }
            }
        }
        Command::Char { family, range } => {
            let fam = family.resolve()?;
            let recs = poly_records(g, &fam, &range.n, |n| Ok((*fam.char_poly(n)).clone()))?;
            emit_polys(g, &range.n, &recs)
        }
        Command::Diagonal { family, range } => {
            let fam = family.resolve()?;
            let recs = poly_records(g, &fam, &range.n, |n| Ok(fam.diagonal_poly(n)))?;
            emit_polys(g, &range.n, &recs)
        }
        Command::Slice { family, range } => {
            let fam = family.resolve()?;
            let recs = poly_records(g, &fam, &range.n, |n| Ok((*fam.reducible_slice(n)).clone()))?;
            emit_polys(g, &range.n, &recs)
        }
        Command::Trace { range } => {
            let recs = range
                .n
                .values()
                .into_iter()
                .map(|n| Ok(TraceRecord { n, trace: nonintegral_trace(n)? }))
                .collect::<Result<Vec<_>, CliError>>()?;
            emit(g, &recs, || {
                lines(&range.n, &recs, |r| r.n, |r| {
                    let kind = if r.trace.non_integral { "non-integral" } else { "integral" };
                    format!("x = {} ({kind})", r.trace.value)
                })
            })
        }
        Command::Identities { range } => {
            let recs = g.exec().try_map(&range.n.values(), |&n| entry_identities_j3(n))?;
            emit(g, &recs, || {
                let yn = |b: bool| if b { "holds" } else { "fails" };
                lines(&range.n, &recs, |r| r.n, |r| {
                    format!(
                        "w12 + q w21 = 0 {}; w21 + q w12 = 0 {}; (1+q) w11 + q(3+q) w12 - (1+q) w22 = 0 {}",
                        yn(r.printed_first),
                        yn(r.swapped_first),
                        yn(r.second)
                    )
                })
            })
        }
        Command::Alexander { range } => {
            let j3 = Family::j3();
            let recs = poly_records(g, j3, &range.n, |n| Ok(alexander_j3(n)?))?;
            emit_polys(g, &range.n, &recs)
        }
        Command::Roots { source } => {
            let p = source.resolve()?;
            let opts = g.numeric();
            let rs = roots_with(
                &p,
                &RootOptions {
                    tolerance: opts.tolerances.root,
                    max_iterations: opts.max_iterations,
                },
            )?;
            emit(g, &rs, || {
                let mut out = format!("roots of {}\n", rs.polynomial);
                for (i, r) in rs.roots.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  [{i}] {}  multiplicity {}  backward error {:.2e}",
                        fmt_c(r.point.value),
                        r.multiplicity,
                        r.backward_error
                    );
                }
                out
            })
        }
        Command::Irreducible { source } => {
            let p = source.resolve()?;
            let v = is_irreducible_z_with(&p, &g.irreducibility())?;
            emit(g, &v, || {
                let method = serde_json::to_value(v.transcript.method)
                    .ok()
                    .and_then(|m| m.as_str().map(str::to_owned))
                    .unwrap_or_default();
                match &v.witness {
                    None => format!("irreducible ({method})"),
                    Some(w) => format!("reducible ({method}): factor {w}"),
                }
            })
        }
        Command::Factor { source } => {
            let p = source.resolve()?;
            let f = factor_z_with(&p, &g.irreducibility())?;
            emit(g, &f, || {
                let mut parts = vec![f.unit.clone()];
                for (h, e) in &f.factors {
                    parts.push(if *e == 1 { format!("({h})") } else { format!("({h})^{e}") });
                }
                parts.join(" * ")
            })
        }
        Command::FactorModP { source, p } => {
            let poly = source.resolve()?;
            let f = factor_mod_p(&poly, *p)?;
            emit(g, &f, || {
                let mut parts = vec![f.unit.to_string()];
                for h in &f.factors {
                    parts.push(if h.multiplicity == 1 {
                        format!("({})", h.factor)
                    } else {
                        format!("({})^{}", h.factor, h.multiplicity)
                    });
                }
                format!("{} (mod {})", parts.join(" * "), f.prime)
            })
        }
        Command::RationalRoots { source } => {
            let p = source.resolve()?;
            let roots = rational_roots(&p)?;
            let rec = RationalRootsRecord { polynomial: p, roots };
            emit(g, &rec, || {
                if rec.roots.is_empty() {
                    "none".into()
                } else {
                    rec.roots.iter().map(|r| r.value.to_string()).collect::<Vec<_>>().join(", ")
                }
            })
        }
        Command::Check { family, range } => {
            let fam = family.resolve()?;
            let ns = range.n.values();
            let reports = check_range(&fam, &ns, &g.irreducibility())
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            emit(g, &reports, || render_table(&reports))?;
            // indices the fact tables mark hyperbolic and non-fibered must conclude
            let missed: Vec<i64> = reports
                .iter()
                .filter(|r| r.hyperbolic.value == Tri::Yes && r.fibered.value == Tri::No)
                .filter(|r| !r.conclusion.is_not_commensurable())
                .map(|r| r.n)
                .collect();
            if missed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failed(format!("criterion did not conclude for n in {missed:?}")))
            }
        }
        Command::Verify { suite, range, family } => verify::run(g, *suite, &range.n, *family),
        Command::Word { word, power, parabolic } => {
            let w = GroupWord::parse(word)?;
            let entries = if *parabolic {
                let (a, b) = parabolic_images();
                strings(&matrix_power_recursive(&w.eval(&a, &b)?, *power)?)
            } else {
                let (a, b) = riley_images();
                strings(&matrix_power_recursive(&w.eval(&a, &b)?, *power)?)
            };
            let rec = MatrixRecord {
                word: w.to_string(),
                power: *power,
                parabolic: *parabolic,
                entries,
            };
            emit(g, &rec, || {
                let [a, b, c, d] = &rec.entries;
                format!("[[{a}, {b}],\n [{c}, {d}]]")
            })
        }
        Command::Cf { entries } => {
            let value = continued_fraction_value(entries)?;
            let rec = ContinuedFractionRecord {
                entries: entries.clone(),
                value,
            };
            emit(g, &rec, || rec.value.to_string())
        }
        Command::Equiv { a, b } => {
            let parse = |s: &str| s.parse::<Fraction>().map_err(|e| CliError::Usage(format!("`{s}`: {e}")));
            let (a, b) = (parse(a)?, parse(b)?);
            let rec = EquivalenceRecord {
                equivalent: fractions_equivalent(&a, &b),
                a,
                b,
            };
            emit(g, &rec, || {
                format!("{} and {} {}", rec.a, rec.b, if rec.equivalent { "are equivalent" } else { "are not equivalent" })
            })
        }
        Command::J3Fraction { range } => {
            let recs = range
                .n
                .values()
                .into_iter()
                .map(j3_fraction)
                .collect::<Result<Vec<_>, _>>()?;
            emit(g, &recs, || {
                lines(&range.n, &recs, |r| r.n, |r| {
                    let second = match (&r.second_expansion, r.second_matches) {
                        (Some(e), Some(m)) => format!("; {e:?} {}", if m { "matches" } else { "DOES NOT match" }),
                        _ => String::new(),
                    };
                    format!(
                        "{} ~ {} {}; {:?} {}{second}",
                        r.first,
                        r.second,
                        if r.equivalent { "equivalent" } else { "NOT equivalent" },
                        r.first_expansion,
                        if r.first_matches { "matches" } else { "DOES NOT match" },
                    )
                })
            })?;
            match recs.iter().find(|r| !r.all_consistent()) {
                Some(r) => Err(CliError::Failed(format!("fraction checks fail at n = {}", r.n))),
                None => Ok(()),
            }
        }
        Command::Genericity { family, range } => {
            let fam = family.resolve()?;
            let recs = g.exec().try_map(&range.n.values(), |&n| {
                Ok::<_, CliError>(GenericityRecord {
                    family: fam.name().to_owned(),
                    n,
                    genericity: genericity_report(&fam, n)?,
                })
            })?;
            emit(g, &recs, || {
                lines(&range.n, &recs, |r| r.n, |r| {
                    format!(
                        "trace field degree {}, generic {} ({})",
                        r.genericity.trace_field_degree, r.genericity.generic, r.genericity.justification
                    )
                })
            })
        }
        Command::Holonomy { family, range } => {
            let fam = family.resolve()?;
            let opts = g.numeric();
            let reports = g.exec().try_map(&range.n.values(), |&n| check_numeric(&fam, n, &opts))?;
            emit(g, &reports, || numeric_text(&reports, true))?;
            numeric_failures(&reports)
        }
        Command::Cusp { range } => {
            let opts = g.numeric();
            let reports = g.exec().try_map(&range.n.values(), |&n| verify_cusp_relation(n, &opts))?;
            emit(g, &reports, || numeric_text(&reports, false))?;
            numeric_failures(&reports)
        }
    }
}

fn strings<T: Scalar + std::fmt::Display>(m: &Mat2<T>) -> [String; 4] {
    m.to_strings()
}
