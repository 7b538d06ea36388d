use charvar::factorint::{
    factor_mod_p, factor_z, is_irreducible_z, is_irreducible_z_with, rational_roots, verify_verdict,
    IrreducibilityOptions, Status,
};
use charvar::families::Family;
use charvar::ring::UniPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

/// Kronecker's method: a factor of degree `d` takes values dividing
/// `f(a)` at `d + 1` integer points; try every such value pattern,
/// interpolate, and test divisibility.
fn kronecker_has_factor(f: &UniPoly) -> bool {
    let n = f.deg().unwrap();
    let mut points = Vec::new();
    let mut a = 0i64;
    while points.len() <= n / 2 {
        let v = f.eval(&BigInt::from(a));
        if v.is_zero() {
            return true;
        }
        points.push((a, v.abs().to_i64().unwrap()));
        a = if a > 0 { -a } else { 1 - a };
    }
    for d in 1..=n / 2 {
        let pts = &points[..=d];
        let choices: Vec<Vec<i64>> = pts
            .iter()
            .map(|&(_, v)| {
                (1..=v)
                    .filter(|k| v % k == 0)
                    .flat_map(|k| [k, -k])
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; d + 1];
        loop {
            let vals: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            if let Some(g) = interpolate(pts, &vals) {
                if g.deg() == Some(d) && f.div_exact(&g).is_some() {
                    return true;
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    false
}

/// Lagrange interpolation; `None` unless the result has integer
/// coefficients.
fn interpolate(pts: &[(i64, i64)], vals: &[i64]) -> Option<UniPoly> {
    let m = pts.len();
    let mut acc = vec![BigRational::zero(); m];
    for i in 0..m {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..m {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(pts[j].0.into());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer((pts[i].0 - pts[j].0).into());
        }
        let w = BigRational::from_integer(vals[i].into()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &w;
        }
    }
    if acc.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(UniPoly::new('x', acc.into_iter().map(|c| c.to_integer()).collect()))
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    (1..=max_deg)
        .prop_flat_map(|d| {
            (
                proptest::collection::vec(-3i64..=3, d),
                prop_oneof![1i64..=3, -3i64..=-1],
            )
        })
        .prop_map(|(mut c, lc)| {
            c.push(lc);
            UniPoly::from_i64('x', &c)
        })
}

#[test]
fn oracle_sanity() {
    assert!(kronecker_has_factor(&UniPoly::from_i64('x', &[-1, 0, 1])));
    assert!(kronecker_has_factor(&UniPoly::from_i64('x', &[1, 0, 2, 0, 1])));
    assert!(!kronecker_has_factor(&UniPoly::from_i64('x', &[1, 0, -10, 0, 1])));
    assert!(!kronecker_has_factor(&UniPoly::from_i64('x', &[1, 1, 1])));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_matches_kronecker(f in poly_strategy(6)) {
        prop_assume!(f.deg().unwrap() >= 1);
        let g = f.primitive_part();
        let v = is_irreducible_z(&f).unwrap();
        let expected = g.deg() == Some(1) || !kronecker_has_factor(&g);
        prop_assert_eq!(v.is_irreducible(), expected, "{}", f);
        prop_assert!(verify_verdict(&v).is_ok());
    }

    #[test]
    fn products_are_reducible(a in poly_strategy(3), b in poly_strategy(3)) {
        let f = &a * &b;
        let v = is_irreducible_z(&f).unwrap();
        prop_assert_eq!(v.status, Status::Reducible);
        let w = v.witness.clone().unwrap();
        prop_assert!(f.primitive_part().div_exact(&w).is_some());
        prop_assert!(verify_verdict(&v).is_ok());
    }

    #[test]
    fn factorization_multiplies_back(a in poly_strategy(4), b in poly_strategy(3), c in poly_strategy(2)) {
        let f = &(&a * &b) * &c;
        let fz = factor_z(&f).unwrap();
        let mut prod = UniPoly::constant('x', fz.unit.parse::<BigInt>().unwrap());
        for (g, e) in &fz.factors {
            prop_assert!(g.deg().unwrap() >= 1);
            prop_assert!(g.deg() == Some(1) || !kronecker_has_factor(g));
            prod = &prod * &g.pow(*e as u32);
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn mod_p_product_reconstructs(f in poly_strategy(8), pi in 0usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        prop_assume!(f.leading_coeff().unwrap() % BigInt::from(p) != BigInt::zero());
        let fac = factor_mod_p(&f, p).unwrap();
        let mut prod = UniPoly::constant('x', fac.unit);
        for m in &fac.factors {
            prop_assert!(m.factor.leading_coeff().unwrap().is_one());
            prod = &prod * &m.factor.pow(m.multiplicity as u32);
        }
        let reduce = |g: &UniPoly| UniPoly::new('x', g.coeffs().iter().map(|c| ((c % p as i64) + p as i64) % p as i64).collect());
        prop_assert_eq!(reduce(&prod), reduce(&f));
    }

    #[test]
    fn rational_roots_are_roots(f in poly_strategy(5)) {
        for r in rational_roots(&f).unwrap() {
            prop_assert!(f.eval_rational(&r.value).is_zero());
            prop_assert_eq!(r.integral, r.value.denom().is_one());
        }
    }
}

#[test]
fn verdicts_are_prime_independent() {
    let polys: Vec<UniPoly> = (-6..=-1)
        .map(|n| (*Family::twist().reducible_slice(n)).clone())
        .chain([
            UniPoly::from_i64('x', &[1, 0, -10, 0, 1]),
            &UniPoly::from_i64('x', &[1, 0, 1]) * &UniPoly::from_i64('x', &[1, 1, 1]),
            (*Family::j3().reducible_slice(-3)).clone(),
        ])
        .collect();
    for f in &polys {
        let base = is_irreducible_z(f).unwrap().status;
        for offset in [1, 3, 7] {
            let opts = IrreducibilityOptions {
                prime_offset: offset,
                prime_count: 3,
                ..Default::default()
            };
            let v = is_irreducible_z_with(f, &opts).unwrap();
            assert_eq!(v.status, base, "{f} offset {offset}");
            verify_verdict(&v).unwrap();
        }
    }
}

#[test]
fn twist_slice_degree_four_is_irreducible() {
    let f = Family::twist().reducible_slice(-2);
    assert_eq!(f.deg(), Some(4));
    let v = is_irreducible_z(&f).unwrap();
    assert!(v.is_irreducible());
}

#[test]
fn resource_limit_is_an_error() {
    // minimal polynomial of sqrt2 + sqrt3 + sqrt5: irreducible, but every
    // reduction splits into factors of degree at most 2
    let f = UniPoly::from_i64('x', &[576, 0, -960, 0, 352, 0, -40, 0, 1]);
    let opts = IrreducibilityOptions { max_subsets: 2, ..Default::default() };
    assert_eq!(
        is_irreducible_z_with(&f, &opts),
        Err(charvar::factorint::FactorError::ResourceLimit { limit: 2 })
    );
    let v = is_irreducible_z(&f).unwrap();
    assert!(v.is_irreducible());
    assert!(v.transcript.subsets_tested > 2);
    verify_verdict(&v).unwrap();
}
