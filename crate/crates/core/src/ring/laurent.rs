use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{context::VarContext, Degree, RingError, UniPoly};

pub type Exponents = Vec<i32>;

/// Sparse multivariate Laurent polynomial with integer coefficients.
///
/// Terms are keyed by exponent vectors whose length equals the context size.
/// Zero coefficients are never stored, and negative exponents only appear
/// in Laurent-flagged variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Exponents, BigInt>,
}

/// Graded order used for printing and serialization: larger sum of absolute
/// exponents first, ties broken lexicographically (larger first).
pub(crate) fn graded_cmp(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|e| e.unsigned_abs() as i64).sum();
    let db: i64 = b.iter().map(|e| e.unsigned_abs() as i64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl LaurentPoly {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        LaurentPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: &Arc<VarContext>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; ctx.len()], c);
        }
        LaurentPoly {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn var(ctx: &Arc<VarContext>, name: &str) -> Result<Self, RingError> {
        let i = ctx.index_of(name)?;
        let mut e = vec![0; ctx.len()];
        e[i] = 1;
        Self::monomial(ctx, 1, e)
    }

    pub fn monomial(
        ctx: &Arc<VarContext>,
        coeff: impl Into<BigInt>,
        exps: Exponents,
    ) -> Result<Self, RingError> {
        Self::from_terms(ctx, std::iter::once((exps, coeff.into())))
    }

    /// Builds a polynomial from raw terms, merging duplicate exponent vectors
    /// and dropping zero coefficients.
    pub fn from_terms<I>(ctx: &Arc<VarContext>, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut out: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            check_exponents(ctx, &e)?;
            *out.entry(e).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            ctx: ctx.clone(),
            terms: out,
        })
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// Terms in storage (ascending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in canonical graded order.
    pub fn canonical_terms(&self) -> Vec<(&Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.ctx.len()])
    }

    fn same_ctx(&self, other: &Self) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(VarContext::mismatch(&self.ctx, &other.ctx))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ctx(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.get_mut(e) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        Ok(LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ctx(other)?;
        let mut terms: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        let mut key = vec![0i32; self.ctx.len()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for (k, (a, b)) in key.iter_mut().zip(ea.iter().zip(eb)) {
                    *k = a + b;
                }
                let prod = ca * cb;
                match terms.get_mut(&key) {
                    Some(v) => *v += prod,
                    None => {
                        terms.insert(key.clone(), prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by the monomial with the given exponent vector.
    pub fn shift(&self, exps: &[i32]) -> Result<Self, RingError> {
        let terms = self.terms.iter().map(|(e, c)| {
            (e.iter().zip(exps).map(|(a, b)| a + b).collect::<Vec<_>>(), c.clone())
        });
        Self::from_terms(&self.ctx, terms)
    }

    /// Max over terms of the exponent sum (negative exponents counted as written).
    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum::<i64>())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, var: &str) -> Result<Degree, RingError> {
        let i = self.ctx.index_of(var)?;
        Ok(self
            .terms
            .keys()
            .map(|e| e[i] as i64)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite))
    }

    /// Smallest exponent of `var`; `None` for the zero polynomial.
    pub fn min_degree_in(&self, var: &str) -> Result<Option<i64>, RingError> {
        let i = self.ctx.index_of(var)?;
        Ok(self.terms.keys().map(|e| e[i] as i64).min())
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, var: &str, k: i64) -> Result<Self, RingError> {
        let i = self.ctx.index_of(var)?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] as i64 == k)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] = 0;
                (e, c.clone())
            })
            .collect();
        Ok(LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn leading_coeff_in(&self, var: &str) -> Result<Self, RingError> {
        match self.degree_in(var)? {
            Degree::NegInfinity => Err(RingError::ZeroPolynomial),
            Degree::Finite(d) => self.coefficient_in(var, d),
        }
    }

    /// Multiplies by the least power of `var` that removes all negative
    /// exponents of it; returns the cleared polynomial and that power.
    pub fn clear_denominators(&self, var: &str) -> Result<(Self, i32), RingError> {
        let i = self.ctx.index_of(var)?;
        let shift = self.terms.keys().map(|e| e[i]).min().unwrap_or(0).min(0);
        if shift == 0 {
            return Ok((self.clone(), 0));
        }
        let mut s = vec![0; self.ctx.len()];
        s[i] = -shift;
        Ok((self.shift(&s)?, -shift))
    }

    /// Composes with `bindings` (variable name in this context → polynomial
    /// in `target`). Unbound variables map to the same-named variable of
    /// `target`. Negative powers of a binding need it to be a unit monomial.
    pub fn substitute(
        &self,
        bindings: &[(&str, &LaurentPoly)],
        target: &Arc<VarContext>,
    ) -> Result<Self, RingError> {
        let n = self.ctx.len();
        let mut binds: Vec<LaurentPoly> = Vec::with_capacity(n);
        for i in 0..n {
            let name = self.ctx.name(i);
            let b = match bindings.iter().find(|(v, _)| *v == name) {
                Some((_, p)) => {
                    if p.ctx != *target {
                        return Err(VarContext::mismatch(p.ctx(), target));
                    }
                    (*p).clone()
                }
                None => {
                    if self.terms.keys().all(|e| e[i] == 0) {
                        LaurentPoly::zero(target)
                    } else {
                        LaurentPoly::var(target, name)?
                    }
                }
            };
            binds.push(b);
        }
        for (v, _) in bindings {
            self.ctx.index_of(v)?;
        }
        let mut inverses: Vec<Option<LaurentPoly>> = vec![None; n];
        for i in 0..n {
            if self.terms.keys().any(|e| e[i] < 0) {
                inverses[i] = Some(binds[i].unit_inverse(self.ctx.name(i))?);
            }
        }
        // Horner nesting: heaviest bindings outermost.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(binds[i].num_terms()));
        let terms: Vec<(&Exponents, &BigInt)> = self.terms.iter().collect();
        substitute_rec(&terms, &order, &binds, &inverses, target)
    }

    fn unit_inverse(&self, name: &str) -> Result<Self, RingError> {
        if self.terms.len() != 1 {
            return Err(RingError::NonInvertibleBinding(name.to_owned()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return Err(RingError::NonInvertibleBinding(name.to_owned()));
        }
        let neg: Vec<i32> = e.iter().map(|x| -x).collect();
        Self::monomial(&self.ctx, c.clone(), neg)
    }

    /// Views a polynomial whose only variable is `var` as a dense univariate
    /// polynomial.
    pub fn to_unipoly(&self, var: &str) -> Result<UniPoly, RingError> {
        let i = self.ctx.index_of(var)?;
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &x)| j != i && x != 0) || e[i] < 0 {
                return Err(RingError::NotUnivariate(var.to_owned()));
            }
            let d = e[i] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] = c.clone();
        }
        let sym = var.chars().next().unwrap_or('x');
        Ok(UniPoly::new(sym, coeffs))
    }
}

fn substitute_rec(
    terms: &[(&Exponents, &BigInt)],
    order: &[usize],
    binds: &[LaurentPoly],
    inverses: &[Option<LaurentPoly>],
    target: &Arc<VarContext>,
) -> Result<LaurentPoly, RingError> {
    let Some((&v, rest)) = order.split_first() else {
        let sum: BigInt = terms.iter().map(|(_, c)| *c).sum();
        return Ok(LaurentPoly::constant(target, sum));
    };
    let mut groups: BTreeMap<i32, Vec<(&Exponents, &BigInt)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[v]).or_default().push(*t);
    }
    let mut acc = LaurentPoly::zero(target);
    let mut prev: Option<i32> = None;
    for (&k, group) in groups.iter().rev() {
        if let Some(pk) = prev {
            acc = &acc * &binds[v].pow((pk - k) as u32);
        }
        acc = &acc + &substitute_rec(group, rest, binds, inverses, target)?;
        prev = Some(k);
    }
    match prev {
        Some(k) if k > 0 => acc = &acc * &binds[v].pow(k as u32),
        Some(k) if k < 0 => {
            let inv = inverses[v].as_ref().expect("inverse prepared for negative exponents");
            acc = &acc * &inv.pow((-k) as u32);
        }
        _ => {}
    }
    Ok(acc)
}

fn check_exponents(ctx: &VarContext, e: &[i32]) -> Result<(), RingError> {
    if e.len() != ctx.len() {
        return Err(RingError::ExponentLength {
            got: e.len(),
            expected: ctx.len(),
        });
    }
    for (i, &x) in e.iter().enumerate() {
        if x < 0 && !ctx.is_laurent(i) {
            return Err(RingError::NegativeExponent(ctx.name(i).to_owned()));
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_terms();
        super::text::write_terms(f, self.ctx.names(), terms.into_iter().map(|(e, c)| (e.as_slice(), c)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.ctx, self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ctx_mq, ctx_xz, parse_poly};

    fn mq(s: &str) -> LaurentPoly {
        parse_poly(s, &ctx_mq()).unwrap()
    }

    fn xz(s: &str) -> LaurentPoly {
        parse_poly(s, &ctx_xz()).unwrap()
    }

    #[test]
    fn identities_and_schoolbook_product() {
        assert_eq!(&xz("z - 1") + &xz("1"), xz("z"));
        assert_eq!(&xz("x - z") * &xz("1"), xz("x - z"));
        assert_eq!(&xz("z - 1") * &xz("z + 1"), xz("z^2 - 1"));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let err = xz("x").checked_add(&mq("q")).unwrap_err();
        assert!(matches!(err, RingError::ContextMismatch { .. }));
    }

    #[test]
    fn negative_exponent_rejected_outside_laurent_vars() {
        let ctx = ctx_mq();
        assert!(LaurentPoly::monomial(&ctx, 1, vec![-3, 0]).is_ok());
        assert_eq!(
            LaurentPoly::monomial(&ctx, 1, vec![0, -1]),
            Err(RingError::NegativeExponent("q".into()))
        );
    }

    #[test]
    fn substitution_into_trace_coordinates() {
        let target = ctx_mq();
        let x = mq("m^2 + m^-2");
        let z = mq("m^2 + m^-2 - q");
        let r1 = xz("z - 1");
        let got = r1.substitute(&[("x", &x), ("z", &z)], &target).unwrap();
        assert_eq!(got, mq("m^2 + m^-2 - q - 1"));
    }

    #[test]
    fn substitution_onto_reducible_slice() {
        let q = crate::ring::ctx_q();
        let two = LaurentPoly::constant(&q, 2);
        let z = parse_poly("2 - q", &q).unwrap();
        let got = xz("x - z").substitute(&[("x", &two), ("z", &z)], &q).unwrap();
        assert_eq!(got, parse_poly("q", &q).unwrap());
        let r = xz("3 + 2*x - 3*z - x*z + z^2");
        let got = r.substitute(&[("x", &two), ("z", &z)], &q).unwrap();
        assert_eq!(got, parse_poly("q^2 + q + 1", &q).unwrap());
    }

    #[test]
    fn substitution_into_nonlaurent_variable_fails_on_negative_power() {
        let ctx = ctx_mq();
        let q = mq("q");
        let err = mq("m^-1").substitute(&[("m", &q)], &ctx).unwrap_err();
        assert_eq!(err, RingError::NegativeExponent("q".into()));
        let err = mq("m^-1").substitute(&[("m", &mq("m + 1"))], &ctx).unwrap_err();
        assert_eq!(err, RingError::NonInvertibleBinding("m".into()));
    }

    #[test]
    fn degrees_and_leading_coefficients() {
        let t = xz("2 + 2*x - 2*z - x*z + z^2");
        assert_eq!(t.total_degree(), Degree::Finite(2));
        assert_eq!(t.degree_in("x").unwrap(), Degree::Finite(1));
        assert_eq!(t.leading_coeff_in("x").unwrap(), xz("2 - z"));
        assert_eq!(LaurentPoly::zero(&ctx_xz()).total_degree(), Degree::NegInfinity);
        assert_eq!(
            LaurentPoly::zero(&ctx_xz()).leading_coeff_in("x"),
            Err(RingError::ZeroPolynomial)
        );
        let (cleared, k) = mq("m^2 + m^-2 - q - 1").clear_denominators("m").unwrap();
        assert_eq!(k, 2);
        assert_eq!(cleared, mq("m^4 - m^2*q - m^2 + 1"));
    }
}
