//! Quadratic Hensel lifting of a factorization modulo `p` to modulo `p^e`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{Fp, Poly};
use crate::ring::UniPoly;

/// Polynomial over `Z / m`, coefficients in `[0, m)`, lowest degree first.
pub(crate) type ZmPoly = Vec<BigInt>;

fn trim(mut a: ZmPoly) -> ZmPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn reduce(a: &[BigInt], m: &BigInt) -> ZmPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

pub(crate) fn scale(a: &[BigInt], k: &BigInt, m: &BigInt) -> ZmPoly {
    trim(a.iter().map(|c| (c * k).mod_floor(m)).collect())
}

/// Division by a monic polynomial.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZmPoly, ZmPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), reduce(&r, m))
}

pub(crate) fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn lift_modp(a: &[u64]) -> ZmPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

struct Pair {
    g: ZmPoly,
    h: ZmPoly,
    s: ZmPoly,
    t: ZmPoly,
}

/// One step from `m` to `m^2` for `f = g h`, `s g + t h = 1`, `h` monic.
fn step(f: &[BigInt], x: Pair, m: &BigInt) -> Pair {
    let m2 = m * m;
    let e = sub(&reduce(f, &m2), &mul(&x.g, &x.h, &m2), &m2);
    let (q, r) = divrem_monic(&mul(&x.s, &e, &m2), &x.h, &m2);
    let g = add(&add(&x.g, &mul(&x.t, &e, &m2), &m2), &mul(&q, &x.g, &m2), &m2);
    let h = add(&x.h, &r, &m2);
    let b = sub(
        &add(&mul(&x.s, &g, &m2), &mul(&x.t, &h, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = divrem_monic(&mul(&x.s, &b, &m2), &h, &m2);
    let s = sub(&x.s, &d, &m2);
    let t = sub(&sub(&x.t, &mul(&x.t, &b, &m2), &m2), &mul(&c, &g, &m2), &m2);
    Pair { g, h, s, t }
}

/// Lifts `f = lc(f) * prod factors (mod p)` to monic factors modulo
/// `p^(2^levels)`. Each factor must be monic and pairwise coprime mod `p`.
fn lift_tree(f: &[BigInt], factors: &[Poly], fp: Fp, levels: u32) -> Vec<ZmPoly> {
    let p = BigInt::from(fp.p);
    let top = p.pow(1u32 << levels);
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        return vec![scale(f, &inverse_mod(lc, &top), &top)];
    }
    let k = factors.len() / 2;
    let lc = fp.reduce(f.last().unwrap());
    let g0 = fp.scale(&factors[..k].iter().fold(vec![1], |acc, g| fp.mul_poly(&acc, g)), lc);
    let h0 = factors[k..].iter().fold(vec![1], |acc, g| fp.mul_poly(&acc, g));
    let (one, s0, t0) = fp.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let mut pair = Pair {
        g: lift_modp(&g0),
        h: lift_modp(&h0),
        s: lift_modp(&s0),
        t: lift_modp(&t0),
    };
    let mut m = p.clone();
    for _ in 0..levels {
        pair = step(f, pair, &m);
        m = &m * &m;
    }
    let mut out = lift_tree(&pair.g, &factors[..k], fp, levels);
    out.extend(lift_tree(&pair.h, &factors[k..], fp, levels));
    out
}

/// Monic lifts modulo `p^exponent` of the given factorization of `f`.
pub(crate) fn hensel_lift(f: &UniPoly, factors: &[Poly], fp: Fp, exponent: u32) -> Vec<ZmPoly> {
    let levels = exponent.max(1).next_power_of_two().trailing_zeros();
    let modulus = BigInt::from(fp.p).pow(exponent);
    let top = BigInt::from(fp.p).pow(1u32 << levels);
    let fz = reduce(f.coeffs(), &top);
    lift_tree(&fz, factors, fp, levels)
        .into_iter()
        .map(|g| reduce(&g, &modulus))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifted_product_matches_input() {
        // (x^2 + 3)(x^3 - 2x + 7)(2x + 5), a factorization into three pieces mod 7
        let f = &(&UniPoly::from_i64('x', &[3, 0, 1]) * &UniPoly::from_i64('x', &[7, -2, 0, 1]))
            * &UniPoly::from_i64('x', &[5, 2]);
        let fp = Fp::new(13);
        let (_, fs) = fp.factor(&fp.reduce_poly(&f));
        let factors: Vec<Poly> = fs.into_iter().map(|(g, m)| {
            assert_eq!(m, 1);
            g
        }).collect();
        for e in [1u32, 2, 3, 5, 8] {
            let m = BigInt::from(13).pow(e);
            let lifted = hensel_lift(&f, &factors, fp, e);
            let mut prod = vec![f.leading_coeff().unwrap().clone()];
            for g in &lifted {
                assert!(g.last().unwrap().is_one());
                prod = mul(&prod, g, &m);
            }
            assert_eq!(prod, reduce(f.coeffs(), &m), "e = {e}");
        }
    }
}
