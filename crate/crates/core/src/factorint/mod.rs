//! Irreducibility and factorization of univariate integer polynomials.
//!
//! The pipeline strips content, screens for repeated and rational roots,
//! intersects the factor-degree patterns modulo several primes, and only
//! then lifts one modular factorization and searches recombinations. Every
//! verdict is proven; an oversized search is reported as
//! [`FactorError::ResourceLimit`].

mod hensel;
mod modp;
mod rational;
mod recombine;

pub use rational::{rational_roots, RationalRoot};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::Exec;
use crate::ring::UniPoly;
use modp::Fp;
use recombine::recombine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("prime {prime} divides the leading coefficient")]
    LeadingCoeffVanishes { prime: u64 },
    #[error("recombination search exceeded {limit} subsets")]
    ResourceLimit { limit: u64 },
}

/// One irreducible factor modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPFactor {
    /// Monic, coefficients in `[0, p)`.
    pub factor: UniPoly,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPFactorization {
    pub prime: u64,
    /// Leading coefficient of the input modulo `prime`.
    pub unit: u64,
    pub factors: Vec<ModPFactor>,
}

impl ModPFactorization {
    /// Factor degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.factor.deg().unwrap_or(0), f.multiplicity))
            .collect();
        d.sort_unstable();
        d
    }
}

fn check_prime(prime: u64) -> Result<Fp, FactorError> {
    if prime >= 1 << 32 {
        return Err(FactorError::PrimeTooLarge(prime));
    }
    if !modp::is_prime(prime) {
        return Err(FactorError::NotPrime(prime));
    }
    Ok(Fp::new(prime))
}

/// Factorization over the field with `prime` elements.
pub fn factor_mod_p(f: &UniPoly, prime: u64) -> Result<ModPFactorization, FactorError> {
    let fp = check_prime(prime)?;
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let a = fp.reduce_poly(f);
    if a.len() != f.coeffs().len() {
        return Err(FactorError::LeadingCoeffVanishes { prime });
    }
    let (unit, fs) = fp.factor(&a);
    Ok(ModPFactorization {
        prime,
        unit,
        factors: fs
            .into_iter()
            .map(|(g, multiplicity)| ModPFactor {
                factor: modp::to_unipoly(&g, f.var()),
                multiplicity,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Irreducible,
    Reducible,
}

/// Step of the pipeline that settled the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Linear,
    Squarefree,
    RationalRoot,
    DegreeSieve,
    LiftRecombine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub prime: u64,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftRecord {
    pub prime: u64,
    pub exponent: u32,
    /// Factor coefficient bound; the lift modulus exceeds twice this.
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub input: UniPoly,
    pub content: String,
    pub method: Method,
    pub rational_root_screen: bool,
    pub primes: Vec<PrimeRecord>,
    /// Degrees achievable as subset sums modulo every prime listed.
    pub admissible_degrees: Vec<usize>,
    pub lift: Option<LiftRecord>,
    pub subsets_tested: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityVerdict {
    pub status: Status,
    pub witness: Option<UniPoly>,
    pub transcript: Transcript,
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        self.status == Status::Irreducible
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityOptions {
    pub prime_count: usize,
    /// Skip this many admissible primes before selecting.
    pub prime_offset: usize,
    pub max_subsets: u64,
    pub exec: Exec,
}

impl Default for IrreducibilityOptions {
    fn default() -> Self {
        IrreducibilityOptions {
            prime_count: 8,
            prime_offset: 0,
            max_subsets: 1 << 20,
            exec: Exec::default(),
        }
    }
}

/// Coefficients beyond this skip the divisor-enumeration root screen.
pub(crate) const ROOT_SCREEN_LIMIT: u64 = 1_000_000_000_000;

/// Admissible primes: leading coefficient nonzero and the reduction
/// squarefree.
fn select_primes(f: &UniPoly, count: usize, offset: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    let mut p = 1u64;
    while out.len() < count.max(1) {
        p += 1;
        if !modp::is_prime(p) {
            continue;
        }
        let fp = Fp::new(p);
        let a = fp.reduce_poly(f);
        if a.len() != f.coeffs().len() || !fp.is_squarefree(&a) {
            continue;
        }
        if skipped < offset {
            skipped += 1;
            continue;
        }
        out.push(p);
    }
    out
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

fn admissible(records: &[PrimeRecord], n: usize) -> Vec<bool> {
    let mut acc = vec![true; n + 1];
    for r in records {
        for (a, b) in acc.iter_mut().zip(subset_sums(&r.degrees, n)) {
            *a &= b;
        }
    }
    acc
}

/// `|lc| 2^n ceil(||f||_2)`: bounds the coefficients of `lc(f) g / lc(g)`
/// for any factor `g` of `f`.
pub(crate) fn factor_bound(f: &UniPoly) -> BigInt {
    let n = f.deg().unwrap_or(0);
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + BigInt::one();
    f.leading_coeff().unwrap().abs() * (BigInt::one() << n) * root
}

/// Least `e` with `p^e > 2 bound`.
pub(crate) fn lift_exponent(p: u64, bound: &BigInt) -> u32 {
    let target = bound * 2;
    let mut e = 1;
    let mut pe = BigInt::from(p);
    while pe <= target {
        pe *= p;
        e += 1;
    }
    e
}

fn modp_records(f: &UniPoly, primes: &[u64], exec: Exec) -> Vec<(PrimeRecord, Vec<Vec<u64>>)> {
    exec.map(primes, |&p| {
        let fp = Fp::new(p);
        let (_, fs) = fp.factor(&fp.reduce_poly(f));
        let factors: Vec<Vec<u64>> = fs.into_iter().map(|(g, _)| g).collect();
        let mut degrees: Vec<usize> = factors.iter().map(|g| g.len() - 1).collect();
        degrees.sort_unstable();
        (PrimeRecord { prime: p, degrees }, factors)
    })
}

pub fn is_irreducible_z(f: &UniPoly) -> Result<IrreducibilityVerdict, FactorError> {
    is_irreducible_z_with(f, &IrreducibilityOptions::default())
}

pub fn is_irreducible_z_with(
    f: &UniPoly,
    opts: &IrreducibilityOptions,
) -> Result<IrreducibilityVerdict, FactorError> {
    let n = match f.deg() {
        None => return Err(FactorError::ZeroPolynomial),
        Some(0) => return Err(FactorError::ConstantPolynomial),
        Some(n) => n,
    };
    let g = f.primitive_part();
    let mut transcript = Transcript {
        input: f.clone(),
        content: f.content().to_string(),
        method: Method::Linear,
        rational_root_screen: false,
        primes: Vec::new(),
        admissible_degrees: Vec::new(),
        lift: None,
        subsets_tested: 0,
    };
    let done = |status, witness: Option<UniPoly>, transcript| {
        Ok(IrreducibilityVerdict { status, witness, transcript })
    };
    if n == 1 {
        return done(Status::Irreducible, None, transcript);
    }
    let sq = g.gcd(&g.derivative());
    if sq.deg().unwrap_or(0) > 0 {
        transcript.method = Method::Squarefree;
        return done(Status::Reducible, Some(sq.primitive_part()), transcript);
    }
    let small = |c: &BigInt| c.abs() <= BigInt::from(ROOT_SCREEN_LIMIT);
    if small(g.leading_coeff().unwrap()) && small(&g.coeff(0)) {
        transcript.rational_root_screen = true;
        if let Some(r) = rational::rational_roots_screened(&g).into_iter().next() {
            transcript.method = Method::RationalRoot;
            return done(Status::Reducible, Some(r.linear_factor(g.var())), transcript);
        }
    }

    let primes = select_primes(&g, opts.prime_count, opts.prime_offset);
    let records = modp_records(&g, &primes, opts.exec);
    transcript.primes = records.iter().map(|(r, _)| r.clone()).collect();
    let allowed = admissible(&transcript.primes, n);
    transcript.admissible_degrees = (0..=n).filter(|&d| allowed[d]).collect();
    if transcript.admissible_degrees == [0, n] {
        transcript.method = Method::DegreeSieve;
        return done(Status::Irreducible, None, transcript);
    }

    let (best, factors) = records
        .iter()
        .min_by_key(|(r, _)| (r.degrees.len(), r.prime))
        .map(|(r, fs)| (r.prime, fs))
        .unwrap();
    let bound = factor_bound(&g);
    let exponent = lift_exponent(best, &bound);
    transcript.method = Method::LiftRecombine;
    transcript.lift = Some(LiftRecord {
        prime: best,
        exponent,
        bound: bound.to_string(),
    });
    let fp = Fp::new(best);
    let lifted = hensel::hensel_lift(&g, factors, fp, exponent);
    let modulus = BigInt::from(best).pow(exponent);
    let out = recombine(&g, &lifted, &modulus, &allowed, opts.max_subsets, true)?;
    transcript.subsets_tested = out.tested;
    match out.factors.len() {
        1 => done(Status::Irreducible, None, transcript),
        _ => done(Status::Reducible, Some(out.factors[0].clone()), transcript),
    }
}

/// Replays a verdict from its transcript. `Ok(())` means every recorded
/// step was recomputed and supports the stated status.
pub fn verify_verdict(v: &IrreducibilityVerdict) -> Result<(), String> {
    let t = &v.transcript;
    let g = t.input.primitive_part();
    let n = g.deg().ok_or("zero input")?;
    if t.content != t.input.content().to_string() {
        return Err("content mismatch".into());
    }
    if v.status == Status::Reducible {
        let w = v.witness.as_ref().ok_or("reducible verdict without witness")?;
        let d = w.deg().ok_or("zero witness")?;
        if d == 0 || d >= n {
            return Err(format!("witness degree {d} is trivial"));
        }
        return match g.div_exact(w) {
            Some(_) => Ok(()),
            None => Err(format!("witness {w} does not divide {g}")),
        };
    }
    if v.witness.is_some() {
        return Err("irreducible verdict with witness".into());
    }
    match t.method {
        Method::Linear => (n == 1).then_some(()).ok_or_else(|| "not linear".into()),
        Method::Squarefree | Method::RationalRoot => Err("method cannot prove irreducibility".into()),
        Method::DegreeSieve | Method::LiftRecombine => {
            for r in &t.primes {
                let fp = check_prime(r.prime).map_err(|e| e.to_string())?;
                let a = fp.reduce_poly(&g);
                if a.len() != n + 1 || !fp.is_squarefree(&a) {
                    return Err(format!("prime {} is not admissible", r.prime));
                }
                let got = factor_mod_p(&g, r.prime).map_err(|e| e.to_string())?.degrees();
                if got != r.degrees {
                    return Err(format!("degree pattern mod {} is {got:?}", r.prime));
                }
            }
            let allowed = admissible(&t.primes, n);
            let adm: Vec<usize> = (0..=n).filter(|&d| allowed[d]).collect();
            if adm != t.admissible_degrees {
                return Err("admissible degree set mismatch".into());
            }
            if t.method == Method::DegreeSieve {
                return if adm == [0, n] { Ok(()) } else { Err("sieve is inconclusive".into()) };
            }
            let lift = t.lift.as_ref().ok_or("missing lift record")?;
            let bound = factor_bound(&g);
            if lift.bound != bound.to_string() {
                return Err("bound mismatch".into());
            }
            let fp = check_prime(lift.prime).map_err(|e| e.to_string())?;
            if BigInt::from(lift.prime).pow(lift.exponent) <= &bound * 2 {
                return Err("lift precision below twice the bound".into());
            }
            let (_, fs) = fp.factor(&fp.reduce_poly(&g));
            let factors: Vec<Vec<u64>> = fs.into_iter().map(|(g, _)| g).collect();
            let lifted = hensel::hensel_lift(&g, &factors, fp, lift.exponent);
            let modulus = BigInt::from(lift.prime).pow(lift.exponent);
            let out = recombine(&g, &lifted, &modulus, &allowed, u64::MAX, true)
                .map_err(|e| e.to_string())?;
            if out.factors.len() == 1 {
                Ok(())
            } else {
                Err(format!("recombination found factor {}", out.factors[0]))
            }
        }
    }
}

/// Complete factorization over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// Signed content: the input equals `unit * prod f_i^e_i`.
    pub unit: String,
    pub factors: Vec<(UniPoly, usize)>,
}

fn factor_squarefree(f: &UniPoly, opts: &IrreducibilityOptions) -> Result<Vec<UniPoly>, FactorError> {
    let n = f.deg().unwrap_or(0);
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let primes = select_primes(f, opts.prime_count, opts.prime_offset);
    let records = modp_records(f, &primes, opts.exec);
    let recs: Vec<PrimeRecord> = records.iter().map(|(r, _)| r.clone()).collect();
    let allowed = admissible(&recs, n);
    if (1..n).all(|d| !allowed[d]) {
        return Ok(vec![f.clone()]);
    }
    let (best, factors) = records
        .iter()
        .min_by_key(|(r, _)| (r.degrees.len(), r.prime))
        .map(|(r, fs)| (r.prime, fs))
        .unwrap();
    let bound = factor_bound(f);
    let exponent = lift_exponent(best, &bound);
    let lifted = hensel::hensel_lift(f, factors, Fp::new(best), exponent);
    let modulus = BigInt::from(best).pow(exponent);
    Ok(recombine(f, &lifted, &modulus, &allowed, opts.max_subsets, false)?.factors)
}

pub fn factor_z(f: &UniPoly) -> Result<Factorization, FactorError> {
    factor_z_with(f, &IrreducibilityOptions::default())
}

pub fn factor_z_with(f: &UniPoly, opts: &IrreducibilityOptions) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let mut unit = f.content();
    if f.leading_coeff().unwrap().is_negative() {
        unit = -unit;
    }
    let mut factors = Vec::new();
    for (a, e) in f.squarefree_decomposition() {
        for g in factor_squarefree(&a, opts)? {
            factors.push((g.primitive_part(), e));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    Ok(Factorization {
        unit: unit.to_string(),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(c: &[i64]) -> UniPoly {
        UniPoly::from_i64('x', c)
    }

    #[test]
    fn factor_mod_p_examples() {
        assert_eq!(factor_mod_p(&x(&[1, 0, 1]), 2).unwrap().degrees(), vec![1, 1]);
        assert_eq!(factor_mod_p(&x(&[1, 0, 1]), 3).unwrap().degrees(), vec![2]);
        assert_eq!(factor_mod_p(&UniPoly::from_i64('q', &[1, 1, 1]), 5).unwrap().degrees(), vec![2]);
        assert_eq!(
            factor_mod_p(&x(&[1, 0, 2]), 2),
            Err(FactorError::LeadingCoeffVanishes { prime: 2 })
        );
        assert_eq!(factor_mod_p(&x(&[1, 1]), 4), Err(FactorError::NotPrime(4)));
    }

    #[test]
    fn irreducibility_examples() {
        let v = is_irreducible_z(&UniPoly::from_i64('q', &[1, 1, 1])).unwrap();
        assert!(v.is_irreducible());
        verify_verdict(&v).unwrap();
        let v = is_irreducible_z(&x(&[-1, 0, 1])).unwrap();
        assert_eq!(v.status, Status::Reducible);
        assert_eq!(v.transcript.method, Method::RationalRoot);
        let w = v.witness.clone().unwrap();
        assert!(w == x(&[-1, 1]) || w == x(&[1, 1]));
        verify_verdict(&v).unwrap();
        assert_eq!(is_irreducible_z(&x(&[5])), Err(FactorError::ConstantPolynomial));
        assert_eq!(is_irreducible_z(&x(&[])), Err(FactorError::ZeroPolynomial));
    }

    #[test]
    fn products_without_rational_roots_need_recombination() {
        // (x^2 + 1)(x^2 + x + 1)(x^3 - x - 1): no linear factors, so the
        // root screen passes and the sieve cannot exclude degree 2
        let f = &(&x(&[1, 0, 1]) * &x(&[1, 1, 1])) * &x(&[-1, -1, 0, 1]);
        let v = is_irreducible_z(&f).unwrap();
        assert_eq!(v.status, Status::Reducible);
        assert_eq!(v.transcript.method, Method::LiftRecombine);
        assert!(f.div_exact(v.witness.as_ref().unwrap()).is_some());
        verify_verdict(&v).unwrap();
        let fz = factor_z(&f).unwrap();
        assert_eq!(fz.factors.len(), 3);
    }

    #[test]
    fn swinnerton_dyer_like_needs_lifting() {
        // x^4 - 10x^2 + 1 is irreducible but splits into degrees <= 2 mod
        // every prime
        let f = x(&[1, 0, -10, 0, 1]);
        let v = is_irreducible_z(&f).unwrap();
        assert!(v.is_irreducible());
        assert_eq!(v.transcript.method, Method::LiftRecombine);
        verify_verdict(&v).unwrap();
    }

    #[test]
    fn tampered_transcripts_fail_replay() {
        let f = x(&[1, 0, -10, 0, 1]);
        let mut v = is_irreducible_z(&f).unwrap();
        v.transcript.primes[0].degrees = vec![4];
        assert!(verify_verdict(&v).is_err());
        let mut v = is_irreducible_z(&x(&[1, 1, 0, 1])).unwrap();
        v.transcript.input = x(&[-1, 0, 1, 0, 1]);
        assert!(verify_verdict(&v).is_err());
    }

    #[test]
    fn content_is_removed() {
        let v = is_irreducible_z(&x(&[2, 2, 2])).unwrap();
        assert!(v.is_irreducible());
        assert_eq!(v.transcript.content, "2");
        let fz = factor_z(&x(&[-2, 0, 2])).unwrap();
        assert_eq!(fz.unit, "2");
        assert_eq!(fz.factors, vec![(x(&[-1, 1]), 1), (x(&[1, 1]), 1)]);
    }

    #[test]
    fn squarefree_screen() {
        let f = &x(&[1, 1]) * &x(&[1, 1]);
        let v = is_irreducible_z(&(&f * &x(&[3, 0, 1]))).unwrap();
        assert_eq!(v.transcript.method, Method::Squarefree);
        assert_eq!(v.witness, Some(x(&[1, 1])));
        let fz = factor_z(&(&f * &x(&[3, 0, 1]))).unwrap();
        assert_eq!(fz.factors, vec![(x(&[1, 1]), 2), (x(&[3, 0, 1]), 1)]);
    }

    #[test]
    fn transcript_json_round_trip() {
        let v = is_irreducible_z(&x(&[1, 0, -10, 0, 1])).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        let back: IrreducibilityVerdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        verify_verdict(&back).unwrap();
    }
}
