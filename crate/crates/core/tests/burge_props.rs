use proptest::prelude::*;
use qsum_core::burge::*;
use qsum_core::{Error, Exponent};

fn int(x: i64) -> Exponent {
    Exponent::from_integer(x)
}

fn sigmas(level: usize) -> Vec<u8> {
    if level.is_multiple_of(2) {
        vec![0, 1]
    } else {
        vec![0]
    }
}

#[test]
fn level_one_tree_matches_closed_forms() {
    let tree = build_tree(3, 1, 0).unwrap();
    assert_eq!(tree.len(), 15);
    let mut checked = 0;
    for node in &tree {
        if let Some(ok) = verify_node(node, 8, 8).unwrap() {
            assert!(ok, "{}", node.node_labels());
            checked += 1;
        }
    }
    // initial, Nn, Euler, Ising, Rogers-Ramanujan
    assert_eq!(checked, 5);
}

#[test]
fn level_n_trees_match_closed_forms() {
    for level in 2..=5 {
        let cap = if level <= 3 { 5 } else { 3 };
        for sigma in sigmas(level) {
            let tree = build_tree(3, level, sigma).unwrap();
            let mut forms = Vec::new();
            for node in tree.iter().filter(|n| n.level() == level) {
                if let Some(ok) = verify_node(node, cap, cap).unwrap() {
                    assert!(ok, "{} N={level} sigma={sigma}", node.node_labels());
                    forms.push(node.closed_form().unwrap());
                }
            }
            for want in [ClosedForm::Tadpole, ClosedForm::EulerLevelN, ClosedForm::ALevelN] {
                assert!(forms.contains(&want), "N={level} missing {want:?}");
            }
            let rr = if level == 2 { ClosedForm::SlaterLevel2 } else { ClosedForm::RogersRamanujanLevelN };
            assert!(forms.contains(&rr), "N={level} missing {rr:?}");
        }
    }
}

#[test]
fn tree_depth_is_capped() {
    assert!(build_tree(MAX_TREE_DEPTH, 1, 0).is_ok());
    assert!(build_tree(MAX_TREE_DEPTH + 1, 1, 0).is_err());
    assert!(build_tree(2, 3, 1).is_err());
}

#[test]
fn symmetric_transforms_agree_with_direct_sums() {
    let children: Vec<Labels> = build_tree(2, 1, 0).unwrap().iter().map(|n| n.node_labels()).collect();
    for level in 1..=3 {
        for sigma in sigmas(level) {
            for &child in &children {
                for m in 0..=4 {
                    for l in l_grid(sigma, 3) {
                        let b = Bounds::symmetric(m, l);
                        for (dir, f) in [
                            (Direction::First, transform_traf1 as fn(_, _, _, _, _, _) -> _),
                            (Direction::Second, transform_traf2),
                        ] {
                            let got = match f(child, level, sigma, m, l, Sufficiency::Require) {
                                Err(Error::SufficiencyViolated) => continue,
                                r => r.unwrap(),
                            };
                            let parent = parent_labels(dir, child, level, &b).unwrap();
                            let direct = burge_xn(&BurgeParams::new(parent, level, sigma, b).unwrap()).unwrap();
                            assert_eq!(got, direct, "{child} {dir:?} N={level} M={m} L={l}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn level_one_transforms_at_general_bounds() {
    let children = [Labels::new(1, 2, 0, 1), Labels::new(1, 3, 0, 1), Labels::new(2, 3, 1, 1)];
    let mut checked = 0;
    for child in children {
        for m1 in 0..=3 {
            for m2 in 0..=3 {
                for l1 in 0..=3 {
                    for l2 in 0..=3 {
                        let b = Bounds::ints(m1, l1, m2, l2);
                        for (dir, got) in [
                            (Direction::First, transform_bt(child, &b, Sufficiency::Require)),
                            (Direction::Second, transform_bt2(child, &b, Sufficiency::Require)),
                        ] {
                            let got = match got {
                                Err(Error::SufficiencyViolated) => continue,
                                r => r.unwrap(),
                            };
                            let parent = parent_labels(dir, child, 1, &b).unwrap();
                            assert_eq!(got, burge_x(parent, m1, l1, m2, l2), "{child} {dir:?} {b:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn second_predicate_admits_a_mismatch() {
    // The general-bounds predicate for the second transform holds here, yet
    // the transformed sum differs from the direct one.
    let child = Labels::new(2, 5, 1, 2);
    let b = Bounds::ints(3, 3, 3, 0);
    for level in [2usize, 3] {
        assert!(sufficiency_second(child, level, &b).unwrap());
        let got = transform_trafo(child, level, 0, &b, Sufficiency::Require).unwrap();
        let parent = parent_labels(Direction::Second, child, level, &b).unwrap();
        let direct = burge_xn(&BurgeParams::new(parent, level, 0, b).unwrap()).unwrap();
        assert_ne!(got, direct, "N={level}");
    }
}

#[test]
fn ignoring_sufficiency_still_evaluates() {
    let child = Labels::new(2, 5, 1, 2);
    let b = Bounds::ints(0, 3, 2, 0);
    assert!(transform_bt2(child, &b, Sufficiency::Ignore).is_ok());
}

fn labels() -> impl Strategy<Value = Labels> {
    (1i64..=4, 1i64..=4, -3i64..=6, -3i64..=6).prop_map(|(p, d, r, s)| Labels::new(p, p + d, r, s))
}

proptest! {
    #[test]
    fn level_one_symmetry(l in labels(), m1 in 0i64..=5, l1 in 0i64..=5, m2 in 0i64..=5, l2 in 0i64..=5) {
        prop_assert!(burge_symmetry_check(l, m1, l1, m2, l2));
    }

    #[test]
    fn level_n_reduces_to_level_one(l in labels(), m1 in 0i64..=5, l1 in 0i64..=5, m2 in 0i64..=5, l2 in 0i64..=5) {
        let bp = BurgeParams::level_one(l, m1, l1, m2, l2);
        prop_assert_eq!(burge_xn(&bp).unwrap(), burge_x(l, m1, l1, m2, l2));
    }

    #[test]
    fn closed_form_rejects_bad_sigma(m in 0i64..4, l in 0i64..4) {
        prop_assert!(closed_form(Labels::new(2, 5, 1, 1), 3, 1, m, int(l)).is_err());
    }
}
