//! Dense polynomials over `F_p` for word-sized primes `p < 2^32`.
//! Coefficients lie in `[0, p)`, lowest degree first, no trailing zeros.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::UniPoly;

pub(crate) type Poly = Vec<u64>;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 32 && is_prime(p));
        Fp { p }
    }

    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn reduce_poly(self, f: &UniPoly) -> Poly {
        trim(f.coeffs().iter().map(|c| self.reduce(c)).collect())
    }

    pub fn add_poly(self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn sub_poly(self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(out)
    }

    pub fn scale(self, a: &[u64], k: u64) -> Poly {
        trim(a.iter().map(|&c| self.mul(c, k)).collect())
    }

    /// `(lc, a / lc)`; the zero polynomial maps to `(0, [])`.
    pub fn monic(self, a: &[u64]) -> (u64, Poly) {
        match a.last() {
            None => (0, Vec::new()),
            Some(&lc) => (lc, self.scale(a, self.inv(lc))),
        }
    }

    pub fn divrem(self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        let db = deg(b).expect("division by zero polynomial");
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> Poly {
        self.divrem(a, b).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(self, a: &[u64], b: &[u64]) -> Poly {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a).1
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        let (lc, g) = self.monic(&r0);
        let k = self.inv(lc);
        (g, self.scale(&s0, k), self.scale(&t0, k))
    }

    pub fn mulmod(self, a: &[u64], b: &[u64], m: &[u64]) -> Poly {
        self.rem(&self.mul_poly(a, b), m)
    }

    pub fn powmod(self, a: &[u64], e: &BigUint, m: &[u64]) -> Poly {
        let mut r = self.rem(&[1], m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            r = self.mulmod(&r, &r, m);
            if e.bit(i) {
                r = self.mulmod(&r, &base, m);
            }
        }
        r
    }

    pub fn derivative(self, a: &[u64]) -> Poly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        deg(&self.gcd(a, &self.derivative(a))) == Some(0)
    }

    /// Squarefree factorization of a monic polynomial: `a = prod g_i^i`.
    pub fn squarefree(self, a: &[u64]) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if deg(a).unwrap_or(0) == 0 {
            return out;
        }
        let mut c = self.gcd(a, &self.derivative(a));
        let mut w = self.divrem(a, &c).0;
        let mut i = 1;
        while deg(&w).unwrap_or(0) > 0 {
            let y = self.gcd(&w, &c);
            let fac = self.divrem(&w, &y).0;
            if deg(&fac).unwrap_or(0) > 0 {
                out.push((fac, i));
            }
            w = y;
            c = self.divrem(&c, &w).0;
            i += 1;
        }
        if deg(&c).unwrap_or(0) > 0 {
            // c is a polynomial in x^p
            let p = self.p as usize;
            let root: Poly = c.iter().step_by(p).copied().collect();
            for (g, k) in self.squarefree(&root) {
                out.push((g, k * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` with `g` the product of all degree-`d` factors.
    pub fn distinct_degree(self, a: &[u64]) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = a.to_vec();
        let x: Poly = vec![0, 1];
        let mut h = self.rem(&x, &f);
        let p = BigUint::from(self.p);
        let mut d = 1;
        while deg(&f).unwrap_or(0) >= 2 * d {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub_poly(&h, &x), &f);
            if deg(&g).unwrap_or(0) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(df) = deg(&f).filter(|&k| k > 0) {
            out.push((f, df));
        }
        out
    }

    /// Splits a monic product of distinct degree-`d` irreducibles.
    pub fn equal_degree(self, a: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = deg(a).unwrap_or(0);
        if n <= d {
            return vec![a.to_vec()];
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let r: Poly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if deg(&r).unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.p == 2 {
                let mut acc = r.clone();
                let mut term = r.clone();
                for _ in 1..d {
                    term = self.mulmod(&term, &term, a);
                    acc = self.add_poly(&acc, &term);
                }
                acc
            } else {
                self.sub_poly(&self.powmod(&r, &exp, a), &[1])
            };
            let g = self.gcd(a, &b);
            let dg = deg(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.divrem(a, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a nonzero polynomial into its leading
    /// coefficient and monic irreducibles with multiplicity, sorted by
    /// degree then coefficients.
    pub fn factor(self, a: &[u64]) -> (u64, Vec<(Poly, usize)>) {
        let (lc, m) = self.monic(a);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ self.p);
        let mut out = Vec::new();
        for (g, mult) in self.squarefree(&m) {
            for (h, d) in self.distinct_degree(&g) {
                for f in self.equal_degree(&h, d, &mut rng) {
                    out.push((f, mult));
                }
            }
        }
        out.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.iter().rev().cmp(y.0.iter().rev())));
        (lc, out)
    }
}

pub(crate) fn to_unipoly(a: &[u64], var: char) -> UniPoly {
    UniPoly::new(var, a.iter().map(|&c| BigInt::from(c)).collect())
}
