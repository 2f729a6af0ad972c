//! The exit-code contract, exercised through real sweeps whose checks have
//! mismatches and errors injected.

use proptest::prelude::*;
use qsum_cli::app::exit_code;
use qsum_cli::families::{CheckResult, Checked, Ctx, Family};
use qsum_cli::params::{ConfigError, Point, Val};
use qsum_cli::sweep::{run, Sweep};
use qsum_cli::{Outcome, Verdict};
use qsum_core::QPoly;

fn no_expand(_: &[(&'static str, Vec<Val>)], _: &Ctx) -> Result<Vec<Point>, ConfigError> {
    Ok(Vec::new())
}

/// Verdict is encoded in the point: 0 equal, 1 mismatch, 2 skipped, 3 error.
fn injected(p: &Point, _: &Ctx) -> CheckResult {
    let outcome = match p.int("v")? {
        0 => Outcome::Equal,
        1 => Outcome::compare(QPoly::one(), QPoly::zero()),
        2 => Outcome::Skipped { sides: None },
        _ => Outcome::Error("injected".into()),
    };
    Ok(Some(Checked::from(outcome)))
}

static INJECTED: Family = Family { id: "injected", about: "", axes: &[], default_trunc: None, expand: no_expand, check: injected };

fn ctx() -> Ctx {
    Ctx { trunc: None, include_exceptional: false, samples: 0, seed: 0 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exit_code_follows_verdicts(codes in prop::collection::vec(0i64..4, 1..300), jobs in 1usize..4) {
        let points = codes.iter().enumerate().map(|(i, &v)| Point::default().with("i", i as i64).with("v", v)).collect();
        let sweep = Sweep { family: &INJECTED, points, ctx: ctx() };
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().unwrap();
        let mut seen = Vec::new();
        let summary = run(&sweep, &pool, false, |r| {
            if r.verdict == Verdict::Mismatch {
                assert!(!r.diff_repr.as_deref().unwrap_or("").is_empty());
            }
            seen.push(r.params["i"].as_i64().unwrap());
            Ok(())
        }).unwrap();
        prop_assert_eq!(seen, (0..codes.len() as i64).collect::<Vec<_>>());
        prop_assert_eq!(summary.total, codes.len());
        let expected = if codes.iter().all(|&v| v == 0 || v == 2) { 0 } else { 1 };
        prop_assert_eq!(exit_code(&summary), expected);
    }
}
