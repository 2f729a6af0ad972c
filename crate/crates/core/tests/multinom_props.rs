use num_bigint::BigInt;
use proptest::prelude::*;
use qsum_core::burge::Labels;
use qsum_core::multinom::*;
use qsum_core::qbinom::binom;
use qsum_core::qpoly::qpoch;
use qsum_core::{Exponent, Truncation};

fn half(x: i64) -> Exponent {
    Exponent::new(x, 2)
}

fn t(level: usize, l: i64, two_a: i64, n: usize) -> qsum_core::QPoly {
    t_multinomial(&MultinomialQuery::new(level, l, half(two_a), n).unwrap()).unwrap()
}

/// Coefficients of `(1 + x + ... + x^N)^L` by repeated convolution.
fn multinomial_row(level: usize, l: i64) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..l {
        let mut next = vec![0u64; row.len() + level];
        for (k, c) in row.iter().enumerate() {
            for j in 0..=level {
                next[k + j] += c;
            }
        }
        row = next;
    }
    row
}

#[test]
fn lattice_decomposition() {
    for level in 2..=3usize {
        for l in 0..=5 {
            let nl = level as i64 * l;
            for ell in (-nl..=nl).step_by(2) {
                assert!(tnew_check(level, l, ell).unwrap(), "N={level} L={l} l={ell}");
            }
        }
    }
}

#[test]
fn values_at_one() {
    for level in 1..=4usize {
        for l in 0..=5 {
            let row = multinomial_row(level, l);
            let nl = level as i64 * l;
            for two_a in (-nl..=nl).step_by(2) {
                let want = BigInt::from(row[((two_a + nl) / 2) as usize]);
                assert_eq!(classical_multinomial(level, l, half(two_a)), want);
                for n in 0..level {
                    assert_eq!(t(level, l, two_a, n).coefficient_sum(), want, "N={level} L={l} 2a={two_a} n={n}");
                }
            }
        }
    }
}

#[test]
fn difference_identity() {
    let mut distinct = 0;
    for level in 3..=4usize {
        for n in 1..level - 1 {
            for l in 0..=4 {
                for ell in -6..=6 {
                    if (n as i64 - ell - level as i64 * l) % 2 != 0 {
                        continue;
                    }
                    let sides = difference_sides(level, l, ell, n).unwrap();
                    assert!(sides.holds(), "N={level} n={n} L={l} l={ell}");
                    if sides.f != sides.g {
                        distinct += 1;
                    }
                }
            }
        }
    }
    // the subtracted pieces do not agree termwise
    assert!(distinct > 0);
}

#[test]
fn abf_sums_at_small_sizes() {
    // X_1^p(0) = 1 and X_s^p(L) = 0 when L - s is even
    for p in 3..=6 {
        assert!(abf_config_sum(p, 1, 0).is_one());
        for l in 0..=6 {
            assert!(abf_config_sum(p, 2, l + (l % 2)).is_zero());
        }
    }
    // for p large the j = 0 term alone is [L; (L-s+1)/2] - [L; (L-s-1)/2]
    for l in 0..=6i64 {
        for s in 1..=3i64 {
            if (l - s + 1) % 2 != 0 {
                continue;
            }
            let want = &binom(l, (l - s + 1) / 2) - &binom(l, (l - s - 1) / 2);
            assert_eq!(abf_config_sum(40, s, l), want, "s={s} L={l}");
        }
    }
}

#[test]
fn configuration_sum_limit() {
    let d = Truncation::integer(10).unwrap();
    let labels = [Labels::new(2, 3, 1, 1), Labels::new(3, 4, 1, 1), Labels::new(2, 5, 1, 2)];
    let mut nonzero = 0;
    for level in 1..=2usize {
        for lab in labels {
            let lab = Labels::new(lab.p, lab.p + (lab.pp - lab.p) * level as i64, lab.r, lab.s);
            for m12 in -1..=1 {
                for l in 0..=4 {
                    if config_limit_bounds(lab, level, m12, l).is_err() {
                        continue;
                    }
                    let Ok(ok) = config_limit_check(lab, level, m12, l, &d) else {
                        continue;
                    };
                    assert!(ok, "{lab} N={level} M12={m12} L={l}");
                    if !config_limit_rhs(lab, level, m12, l).unwrap().is_zero() {
                        nonzero += 1;
                    }
                }
            }
        }
    }
    assert!(nonzero > 10);
}

#[test]
fn double_length_normalization_fails() {
    // normalizing by (q)_{2L} instead of (q)_L breaks the limit once L >= 2
    let d = Truncation::integer(10).unwrap();
    let lab = Labels::new(2, 3, 1, 1);
    let l = 2;
    let (lhs, _) = config_limit_lhs(lab, 1, 0, l, &d).unwrap();
    let rhs = config_limit_rhs(lab, 1, 0, l).unwrap();
    assert!(lhs.truncated_eq(&rhs, &d));
    let correction = qpoch(l + 1, l as usize);
    assert!(!lhs.mul_truncated(&correction, &d).truncated_eq(&rhs, &d));
}

proptest! {
    #[test]
    fn reflection_symmetry(level in 1usize..=4, l in 0i64..=5, k in 0i64..=20) {
        let nl = level as i64 * l;
        let two_a = -nl + 2 * (k % (nl + 1));
        prop_assume!(two_a <= nl);
        prop_assert_eq!(t(level, l, two_a, 0), t(level, l, -two_a, 0));
    }

    #[test]
    fn coefficients_are_nonnegative(level in 1usize..=4, l in 0i64..=5, k in 0i64..=20, n in 0usize..4) {
        prop_assume!(n < level);
        let nl = level as i64 * l;
        let two_a = -nl + 2 * (k % (nl + 1));
        prop_assume!(two_a <= nl);
        prop_assert!(t(level, l, two_a, n).has_nonnegative_coeffs());
    }
}
