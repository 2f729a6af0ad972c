use num_bigint::BigInt;
use proptest::prelude::*;
use qsum_core::qpoly::euler_inverse_truncated;
use qsum_core::series::*;
use qsum_core::{Exponent, QPoly, Truncation};

fn tr(d: i64) -> Truncation {
    Truncation::integer(d).unwrap()
}

/// `1/(q)_inf` by the recurrence of Euler's pentagonal theorem.
fn pentagonal_partitions(d: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::from(0); d + 1];
    p[0] = BigInt::from(1);
    for n in 1..=d as i64 {
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mut t = p[(n - g1) as usize].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                t += &p[(n - g2) as usize];
            }
            p[n as usize] += t * sign;
            k += 1;
        }
    }
    p
}

#[test]
fn partition_routes_agree() {
    let d = 50;
    let oracle = pentagonal_partitions(d);
    assert_eq!(partition_numbers(d), oracle);
    let series = euler_inverse_truncated(&tr(d as i64));
    for (n, want) in oracle.iter().enumerate() {
        assert_eq!(&series.coeff(Exponent::from_integer(n as i64)), want);
    }
    let prod = euler_truncated(&tr(d as i64)).mul_truncated(&series, &tr(d as i64));
    assert_eq!(prod, QPoly::one());
}

#[test]
fn durfee_rectangles() {
    for ell in 0..=3 {
        assert!(durfee_check(ell, &tr(25)).unwrap(), "ell={ell}");
    }
}

#[test]
fn limit_of_level_n_sum() {
    for level in 1..=3usize {
        for sigma in 0..=1u8 {
            for ell in 0..=3i64 {
                if (ell + sigma as i64 * level as i64) % 2 != 0 {
                    continue;
                }
                assert!(limlm_check(level, ell, sigma, &tr(15)).unwrap(), "N={level} l={ell} sigma={sigma}");
            }
        }
    }
}

#[test]
fn conjugate_pairs() {
    for level in 1..=2usize {
        for ell in 0..=2 {
            for sigma in 0..=1u8 {
                if (ell + sigma as i64 * level as i64) % 2 != 0 {
                    continue;
                }
                for m in [Some(3), None] {
                    let bq = BaileyPairQuery::new(level, ell, m, sigma, tr(12)).unwrap();
                    assert!(conjugate_pair_check(&bq).unwrap(), "{bq:?}");
                }
            }
        }
    }
}

#[test]
fn beyond_the_bound_both_sides_vanish() {
    let bq = BaileyPairQuery::new(1, 0, Some(2), 0, tr(20)).unwrap();
    assert!(bq.gamma(3).unwrap().is_zero());
    assert!(bq.delta(3).unwrap().is_zero());
}

#[test]
fn product_sides() {
    for k in [ProductKind::Ising, ProductKind::RogersRamanujan, ProductKind::Slater] {
        assert!(product_check(k, &tr(30)), "{k:?}");
    }
}

#[test]
fn string_routes_agree() {
    for level in 1..=3usize {
        for ell in 0..=level as i64 {
            for m in (-3..=3).filter(|m: &i64| (m - ell).rem_euclid(2) == 0) {
                let sq = StringFunctionQuery::new(level, m, ell, 0, tr(10)).unwrap();
                let spinon = string_spinon(&sq);
                let fermionic = string_fermionic(&sq).unwrap();
                assert_eq!(spinon, fermionic, "N={level} l={ell} m={m}");
                assert_eq!(spinon_prefactor(&sq) - fermionic_prefactor(&sq), string_prefactor_ratio(&sq));
            }
        }
        for sigma in 0..=1u8 {
            let ell = sigma as i64 * level as i64;
            let sq = StringFunctionQuery::new(level, ell, ell, sigma, tr(10)).unwrap();
            assert_eq!(string_fermionic(&sq).unwrap(), string_lp(&sq).unwrap(), "N={level} sigma={sigma}");
        }
    }
}

#[test]
fn closed_string_form_needs_matching_ell() {
    let sq = StringFunctionQuery::new(2, 1, 1, 0, tr(5)).unwrap();
    assert!(string_lp(&sq).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn refinement_is_monotone(d in 0i64..14, extra in 1i64..6, ell in 0i64..3) {
        let small = tr(d);
        let (a, b) = durfee_sides(ell, &tr(d + extra)).unwrap();
        prop_assert!(durfee_check(ell, &small).unwrap());
        prop_assert_eq!(a.truncate(&small), durfee_sides(ell, &small).unwrap().0);
        prop_assert_eq!(b.truncate(&small), durfee_sides(ell, &small).unwrap().1);
        let big = product_side(ProductKind::RogersRamanujan, &tr(d + extra));
        prop_assert_eq!(big.truncate(&small), product_side(ProductKind::RogersRamanujan, &small));
    }
}
