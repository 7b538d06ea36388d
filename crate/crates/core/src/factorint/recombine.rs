//! Zassenhaus recombination of lifted modular factors.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::hensel::{mul, ZmPoly};
use super::FactorError;
use crate::ring::UniPoly;

pub(crate) struct Recombined {
    /// True factors found, in discovery order, then the remaining cofactor.
    /// A single entry means the input is irreducible.
    pub factors: Vec<UniPoly>,
    pub tested: u64,
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half { r - m } else { r }
        })
        .collect()
}

/// Searches subsets of `lifted` (monic factors of `f` modulo `modulus`) by
/// ascending size for true factors. Subset degrees outside `allowed` are
/// skipped without trial division; every enumerated subset counts toward
/// `limit`.
pub(crate) fn recombine(
    f: &UniPoly,
    lifted: &[ZmPoly],
    modulus: &BigInt,
    allowed: &[bool],
    limit: u64,
    stop_at_first: bool,
) -> Result<Recombined, FactorError> {
    let var = f.var();
    let mut rest: Vec<usize> = (0..lifted.len()).collect();
    let mut cur = f.clone();
    let mut found = Vec::new();
    let mut tested = 0u64;
    let mut s = 1;
    'outer: while 2 * s <= rest.len() {
        let b = cur.leading_coeff().unwrap().clone();
        let c0 = cur.coeff(0);
        let mut hit = None;
        for combo in rest.iter().copied().combinations(s) {
            // a half-size subset and its complement describe the same split
            if 2 * s == rest.len() && combo[0] != rest[0] {
                break;
            }
            tested += 1;
            if tested > limit {
                return Err(FactorError::ResourceLimit { limit });
            }
            let d: usize = combo.iter().map(|&i| lifted[i].len() - 1).sum();
            if !allowed[d] {
                continue;
            }
            let tail = combo
                .iter()
                .fold(b.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(modulus));
            let tail = symmetric(&[tail], modulus).pop().unwrap();
            if !c0.is_zero() && (tail.is_zero() || !(&b * &c0).is_multiple_of(&tail)) {
                continue;
            }
            let prod = combo
                .iter()
                .fold(vec![b.clone()], |acc, &i| mul(&acc, &lifted[i], modulus));
            let g = UniPoly::new(var, symmetric(&prod, modulus)).primitive_part();
            if let Some(q) = cur.div_exact(&g) {
                hit = Some((combo, g, q));
                break;
            }
        }
        match hit {
            Some((combo, g, q)) => {
                found.push(g);
                rest.retain(|i| !combo.contains(i));
                cur = q;
                if stop_at_first {
                    break 'outer;
                }
            }
            None => s += 1,
        }
    }
    if cur.deg().unwrap_or(0) > 0 || found.is_empty() {
        found.push(cur);
    }
    Ok(Recombined { factors: found, tested })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_range() {
        let m = BigInt::from(7);
        let got = symmetric(&[0, 3, 4, 6, 13].map(BigInt::from), &m);
        assert_eq!(got, [0, 3, -3, -1, -1].map(BigInt::from));
    }
}
