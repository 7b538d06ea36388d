use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Degree, LaurentPoly, RingError, VarContext};

/// Dense univariate integer polynomial; `coeffs[i]` multiplies `var^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: char,
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(var: char, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    /// Parses text in a single variable, e.g. `q^2 + q + 1` or `2*x - 3`.
    /// Text without letters is a constant in `x`.
    pub fn parse(text: &str) -> Result<Self, RingError> {
        let mut letters: Vec<char> = text.chars().filter(|c| c.is_ascii_alphabetic()).collect();
        letters.sort_unstable();
        letters.dedup();
        let var = match letters.as_slice() {
            [] => 'x',
            [v] => *v,
            _ => return Err(RingError::NotUnivariate(letters.iter().collect())),
        };
        let name = var.to_string();
        let ctx = VarContext::new(&[(name.as_str(), false)]);
        super::parse_poly(text, &ctx)?.to_unipoly(&name)
    }

    pub fn from_i64(var: char, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(var: char) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: char) -> Self {
        Self::constant(var, 1)
    }

    pub fn constant(var: char, c: impl Into<BigInt>) -> Self {
        Self::new(var, vec![c.into()])
    }

    /// `c * var^k`.
    pub fn monomial(var: char, c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(var, coeffs)
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n as i64 - 1),
        }
    }

    /// Degree as an index; `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> Result<bool, RingError> {
        self.leading_coeff()
            .map(One::is_one)
            .ok_or(RingError::ZeroPolynomial)
    }

    fn same_var(&self, other: &Self) -> Result<(), RingError> {
        // constants carry no real variable; let them mix freely
        if self.var == other.var || self.deg().unwrap_or(0) == 0 || other.deg().unwrap_or(0) == 0 {
            Ok(())
        } else {
            Err(RingError::ContextMismatch {
                left: self.var.to_string(),
                right: other.var.to_string(),
            })
        }
    }

    fn result_var(&self, other: &Self) -> char {
        if self.deg().unwrap_or(0) == 0 {
            other.var
        } else {
            self.var
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Self::new(self.result_var(other), coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.same_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Ok(Self::new(self.result_var(other), coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_var(other)?;
        let var = self.result_var(other);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(var));
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self::new(var, out))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.var);
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

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Substitutes `var -> p` (Horner).
    pub fn compose(&self, p: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(p.var), |acc, c| {
                &(&acc * p) + &UniPoly::constant(p.var, c.clone())
            })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let mut g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.var, self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient over the integers, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let dd = d.deg()?;
        let lc = d.leading_coeff()?;
        let Some(n) = self.deg() else {
            return Some(Self::zero(self.var));
        };
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * c;
            }
            quot[k] = qk;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(self.var, quot))
        } else {
            None
        }
    }

    /// `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.deg().expect("pseudo-division by zero");
        let lc = d.leading_coeff().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= lc;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] -= &top * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(self.var, r)
    }

    /// Greatest common divisor in `Z[var]`, positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.primitive_part().scale(&c)
    }

    /// Yun's square-free decomposition of the primitive part:
    /// `pp(self) = prod a_i^i`, returned as `(a_i, i)` for nonconstant `a_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let f = self.primitive_part();
        if f.deg().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df).primitive_part();
        let mut b = f.div_exact(&a0).expect("gcd divides f");
        let mut c = df.div_exact(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg().unwrap_or(0) > 0 {
            let a = b.gcd(&d).primitive_part();
            b = b.div_exact(&a).expect("exact");
            c = d.div_exact(&a).expect("exact");
            d = &c - &b.derivative();
            if a.deg().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg().unwrap_or(0) == 0
    }

    pub fn to_laurent(&self, ctx: &Arc<VarContext>) -> Result<LaurentPoly, RingError> {
        let name = self.var.to_string();
        let i = ctx.index_of(&name)?;
        let n = ctx.len();
        LaurentPoly::from_terms(
            ctx,
            self.coeffs.iter().enumerate().map(|(d, c)| {
                let mut e = vec![0; n];
                e[i] = d as i32;
                (e, c.clone())
            }),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [self.var.to_string()];
        let exps: Vec<[i32; 1]> = (0..self.coeffs.len()).map(|i| [i as i32]).collect();
        super::text::write_terms(
            f,
            &names,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (exps[i].as_slice(), c)),
        )
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.checked_add(rhs).expect("UniPoly add")
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.checked_sub(rhs).expect("UniPoly sub")
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.checked_mul(rhs).expect("UniPoly mul")
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64('q', c)
    }

    #[test]
    fn monic_checks() {
        assert!(p(&[1, 1, 1]).is_monic().unwrap());
        assert!(!UniPoly::from_i64('x', &[-3, 2]).is_monic().unwrap());
        assert!(!UniPoly::from_i64('t', &[2, -3, 2]).is_monic().unwrap());
        assert_eq!(UniPoly::zero('q').is_monic(), Err(RingError::ZeroPolynomial));
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(&[1, 1, 1]).to_string(), "q^2 + q + 1");
        assert_eq!(UniPoly::from_i64('x', &[3, -1]).to_string(), "-x + 3");
        assert_eq!(UniPoly::from_i64('x', &[-3, 2]).to_string(), "2*x - 3");
        assert_eq!(UniPoly::zero('x').to_string(), "0");
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[1, 2])), Some(p(&[2])));
        let f = &p(&[1, 1, 1]) * &p(&[-1, 2]);
        let g = &p(&[1, 1, 1]) * &p(&[5, 0, 3]);
        assert_eq!(f.gcd(&g), p(&[1, 1, 1]));
        assert_eq!(p(&[6, 6]).gcd(&p(&[4, 4])), p(&[2, 2]));
    }

    #[test]
    fn parse_single_variable() {
        assert_eq!(UniPoly::parse("q^2 + q + 1").unwrap(), UniPoly::from_i64('q', &[1, 1, 1]));
        assert_eq!(UniPoly::parse("2*x - 3").unwrap(), UniPoly::from_i64('x', &[-3, 2]));
        assert_eq!(UniPoly::parse("7").unwrap(), UniPoly::from_i64('x', &[7]));
        assert!(matches!(UniPoly::parse("x + y"), Err(RingError::NotUnivariate(_))));
        assert!(UniPoly::parse("x^-1").is_err());
    }

    #[test]
    fn squarefree_decomposition_recovers_powers() {
        let a = p(&[1, 1, 1]);
        let b = p(&[-3, 2]);
        let f = &(&a * &b.pow(2)) * &p(&[1, 0, 0, 1]).pow(3);
        let dec = f.squarefree_decomposition();
        let mult: Vec<usize> = dec.iter().map(|(_, m)| *m).collect();
        assert_eq!(mult, vec![1, 2, 3]);
        assert_eq!(dec[0].0, a);
        assert_eq!(dec[1].0, b);
        assert!(a.is_squarefree());
        assert!(!f.is_squarefree());
    }

    #[test]
    fn compose_and_eval() {
        // (x - z) at x = 2, z = 2 - q
        let r = UniPoly::from_i64('z', &[3, -3, 1]); // 3 - 3z + z^2 (x = 0 slice)
        let z = p(&[2, -1]);
        assert_eq!(r.compose(&z), p(&[1, -1, 1]));
        assert_eq!(p(&[1, 1, 1]).eval(&BigInt::from(2)), BigInt::from(7));
    }
}
