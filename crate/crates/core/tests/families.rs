use charvar::families::{alexander_j3, xz_to_mq, Family};
use charvar::matword::{matrix_power_recursive, riley_images, GroupWord, Mat2};
use charvar::ring::{ctx_mq, parse_poly, Degree, LaurentPoly, UniPoly};
use proptest::prelude::*;

fn riley_from_matrix(w: &Mat2<LaurentPoly>) -> LaurentPoly {
    let m_minus = parse_poly("m - m^-1", &ctx_mq()).unwrap();
    &(&m_minus * &w.e12) + &w.e22
}

#[test]
fn substitution_identity_both_families() {
    for f in [Family::twist(), Family::j3()] {
        for n in -20..=20 {
            assert_eq!(xz_to_mq(&f.char_poly(n)), *f.riley_poly(n), "{} n={n}", f.name());
        }
    }
}

#[test]
fn riley_matches_matrix_power_and_direct_product() {
    let (a, b) = riley_images();
    let w = Family::twist().spec().word.eval(&a, &b).unwrap();
    let winv = w.adjugate();
    for n in -8i64..=8 {
        let rec = matrix_power_recursive(&w, n).unwrap();
        let mut direct = Mat2::identity_like(&w.e11);
        for _ in 0..n.unsigned_abs() {
            direct = direct.mul(if n > 0 { &w } else { &winv });
        }
        assert_eq!(rec, direct);
        assert_eq!(riley_from_matrix(&rec), *Family::twist().riley_poly(n), "n={n}");
    }
}

#[test]
fn degenerate_locus_gives_one() {
    let ctx = ctx_mq();
    let q0 = parse_poly("m^2 - 2 + m^-2", &ctx).unwrap();
    let m = LaurentPoly::var(&ctx, "m").unwrap();
    for n in -20..=20 {
        let v = Family::twist()
            .riley_poly(n)
            .substitute(&[("m", &m), ("q", &q0)], &ctx)
            .unwrap();
        assert!(v.is_one(), "n={n}: {v}");
    }
}

#[test]
fn twist_diagonal_closed_form() {
    for n in -50i64..=50 {
        let expected = UniPoly::from_i64('x', &[-(2 * n - 1), n]);
        assert_eq!(Family::twist().diagonal_poly(n), expected, "n={n}");
    }
}

#[test]
fn degree_laws() {
    for n in -20i64..0 {
        let t = Family::twist();
        assert_eq!(t.char_poly(n).total_degree(), Degree::Finite(-2 * n));
        assert_eq!(t.reducible_slice(n).degree(), Degree::Finite(-2 * n));
        let j = Family::j3();
        assert_eq!(j.char_poly(n).total_degree(), Degree::Finite(-3 * n));
        assert_eq!(j.reducible_slice(n).degree(), Degree::Finite(-3 * n));
        let d = j.diagonal_poly(n);
        assert_eq!(d.degree(), Degree::Finite(-n));
        assert_eq!(d.leading_coeff(), Some(&2.into()));
    }
    for n in 1i64..=12 {
        let t = Family::twist();
        assert_eq!(t.char_poly(n).total_degree(), Degree::Finite(2 * n - 1));
        assert_eq!(t.reducible_slice(n).degree(), Degree::Finite(2 * n - 1));
    }
}

/// Alexander polynomial of the 2-bridge knot `b(p, r)` (`p`, `r` odd) from
/// the sign sequence `e_i = (-1)^floor(i r / p)`:
/// `sum_k (-1)^k t^(e_1 + ... + e_k)`, shifted to start at `t^0`.
fn two_bridge_alexander(p: i64, r: i64) -> UniPoly {
    let mut exps = vec![0i64];
    for i in 1..p {
        let e = if (i * r / p) % 2 == 0 { 1 } else { -1 };
        exps.push(exps[i as usize - 1] + e);
    }
    let lo = *exps.iter().min().unwrap();
    let hi = *exps.iter().max().unwrap();
    let mut c = vec![0i64; (hi - lo + 1) as usize];
    for (k, e) in exps.iter().enumerate() {
        c[(e - lo) as usize] += if k % 2 == 0 { 1 } else { -1 };
    }
    if c.iter().sum::<i64>() < 0 {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    UniPoly::from_i64('t', &c)
}

#[test]
fn alexander_matches_two_bridge_sign_sequence() {
    for n in -10..=-1i64 {
        let p = 1 - 6 * n;
        let mut r = (4 * n - 1).rem_euclid(p);
        if r % 2 == 0 {
            r = p - r;
        }
        assert_eq!(alexander_j3(n).unwrap(), two_bridge_alexander(p, r), "n={n}");
    }
}

#[test]
fn twist_slice_is_riley_at_m_one() {
    let ctx = ctx_mq();
    let one = LaurentPoly::one(&ctx);
    for n in -10..=10 {
        let r = Family::twist().riley_poly(n).substitute(&[("m", &one)], &ctx).unwrap();
        assert_eq!(r.to_unipoly("q").unwrap(), *Family::twist().reducible_slice(n));
    }
}

#[test]
fn custom_family_from_word_reproduces_twist() {
    let f = Family::new(
        charvar::families::FamilySpec::from_word("custom", GroupWord::parse("AbaB").unwrap()).unwrap(),
    );
    for n in -6..=6 {
        assert_eq!(f.char_poly(n), Family::twist().char_poly(n));
    }
}

proptest! {
    #[test]
    fn memo_order_does_not_matter(ns in proptest::collection::vec(-15i64..=15, 1..6)) {
        let fresh = Family::new(charvar::families::FamilySpec::j3());
        for &n in &ns {
            prop_assert_eq!(fresh.char_poly(n), Family::j3().char_poly(n));
        }
    }

    #[test]
    fn slice_recursion_commutes_with_evaluation(n in -12i64..=12, x0 in -3i64..=3, z0 in -3i64..=3) {
        // (x0, z0 - q) specialization applied before and after the recursion
        let f = Family::twist();
        let direct = f.char_poly(n).slice(&x0.into(), &z0.into());
        let t = f.spec().trace_xz.slice(&x0.into(), &z0.into());
        let (mut a, mut b) = (
            f.spec().char_seeds.0.slice(&x0.into(), &z0.into()),
            f.spec().char_seeds.1.slice(&x0.into(), &z0.into()),
        );
        if n >= 1 {
            for _ in 1..n { let c = &(&t * &b) - &a; a = b; b = c; }
            prop_assert_eq!(direct, b);
        } else {
            for _ in 0..(-n) { let c = &(&t * &a) - &b; b = a; a = c; }
            prop_assert_eq!(direct, a);
        }
    }
}
