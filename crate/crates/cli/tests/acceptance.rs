//! Acceptance suite. Prints one PASS/FAIL line per criterion with its
//! tolerance and time limit, and exits nonzero if any criterion fails.
//!
//! Run with `cargo test -p qsum-cli --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qsum_cli::suite::SUITE;
use qsum_cli::sweep::run;
use qsum_cli::{IdentityReport, Summary, Verdict};
use qsum_core::burge::{recognize, ClosedForm, Labels};
use serde_json::Value;

struct Collected {
    reports: Vec<IdentityReport>,
    summary: Summary,
    elapsed: Duration,
}

fn collect(criterion: u8, pool: &rayon::ThreadPool) -> Collected {
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut summary = Summary::new(&format!("criterion-{criterion}"));
    for entry in SUITE.iter().filter(|e| e.criterion == criterion) {
        let sweep = entry.prepare().expect("embedded grid is valid");
        let s = run(&sweep, pool, false, |r| {
            reports.push(r.clone());
            Ok(())
        })
        .expect("in-memory sink");
        summary.merge(&s);
    }
    Collected { reports, summary, elapsed: start.elapsed() }
}

fn int(r: &IdentityReport, key: &str) -> i64 {
    r.params.get(key).and_then(Value::as_i64).unwrap_or_else(|| panic!("{key} missing in {:?}", r.params))
}

fn bad_points(c: &Collected) -> Vec<String> {
    c.reports
        .iter()
        .filter(|r| !r.verdict.is_ok())
        .take(5)
        .map(|r| format!("{} {:?} {}", r.identity_id, r.verdict, Value::Object(r.params.clone())))
        .collect()
}

struct Line {
    ok: bool,
    text: String,
}

fn line(n: u8, ok: bool, text: String, c: &Collected) -> Line {
    let mut text = format!("criterion {n}: {text} [{:.2}s]", c.elapsed.as_secs_f64());
    for b in bad_points(c) {
        text.push_str(&format!("\n    offending: {b}"));
    }
    Line { ok, text }
}

fn criterion1(pool: &rayon::ThreadPool) -> Line {
    let c = collect(1, pool);
    let s = &c.summary;
    let ok = s.total >= 500 && s.mismatch == 0 && s.error == 0 && s.skipped_precondition == 0 && c.elapsed < Duration::from_secs(120);
    let text = format!("generalized Saalschutz, {} points (need >= 500), {} mismatches (need 0), limit 120s", s.total, s.mismatch);
    line(1, ok, text, &c)
}

fn criterion2(pool: &rayon::ThreadPool) -> Line {
    let c = collect(2, pool);
    let exceptional: Vec<_> = c.reports.iter().filter(|r| r.verdict == Verdict::SkippedPrecondition).collect();
    let lhs_zero = exceptional.iter().all(|r| r.lhs_repr.as_deref() == Some("0"));
    let rhs_nonzero = exceptional.iter().filter(|r| r.rhs_repr.as_deref() != Some("0")).count();
    let example = exceptional
        .iter()
        .any(|r| int(r, "L1") == 1 && int(r, "L2") == -1 && int(r, "M") == 0 && int(r, "ell") == 1 && r.rhs_repr.as_deref() == Some("1"));
    let s = &c.summary;
    let ok = s.total == 13usize.pow(4) && s.mismatch == 0 && s.error == 0 && lhs_zero && rhs_nonzero > 0 && example;
    let text = format!(
        "classic q-Saalschutz on [-6,6]^4, {} regular points equal, {} exceptional with LHS=0: {lhs_zero}, RHS != 0 on {rhs_nonzero} of them",
        s.equal,
        exceptional.len()
    );
    line(2, ok, text, &c)
}

fn criterion3(pool: &rayon::ThreadPool) -> Line {
    let c = collect(3, pool);
    let s = &c.summary;
    let distinct: BTreeSet<String> = c.reports.iter().map(|r| Value::Object(r.params.clone()).to_string()).collect();
    let ok = distinct.len() >= 1000 && s.equal == s.total && c.elapsed < Duration::from_secs(60);
    let text = format!("Sears transform, {} distinct balanced tuples (need >= 1000), {} mismatches, limit 60s", distinct.len(), s.mismatch);
    line(3, ok, text, &c)
}

fn criterion4(pool: &rayon::ThreadPool) -> Line {
    let c = collect(4, pool);
    let mut covered = BTreeSet::new();
    for r in &c.reports {
        let lab = Labels::new(int(r, "p"), int(r, "pp"), int(r, "r"), int(r, "s"));
        let level = int(r, "N");
        if let Some(form) = recognize(lab, level as usize) {
            covered.insert((format!("{form:?}"), level));
        }
    }
    let mut need: Vec<(ClosedForm, i64)> = vec![
        (ClosedForm::Nn, 1),
        (ClosedForm::Euler, 1),
        (ClosedForm::Ising, 1),
        (ClosedForm::RogersRamanujan, 1),
        (ClosedForm::SlaterLevel2, 2),
    ];
    for n in 2..=3 {
        need.extend([(ClosedForm::Tadpole, n), (ClosedForm::EulerLevelN, n), (ClosedForm::ALevelN, n)]);
    }
    let missing: Vec<String> = need
        .iter()
        .filter(|(f, n)| !covered.contains(&(format!("{f:?}"), *n)))
        .map(|(f, n)| format!("{f:?}@N={n}"))
        .collect();
    let level1 = c.reports.iter().filter(|r| int(r, "N") == 1 && int(r, "M") <= 8).count();
    let s = &c.summary;
    let ok = missing.is_empty() && s.equal == s.total && level1 >= 4 * 81;
    let text = format!("Burge tree closed forms, {} node points, {} mismatches, missing forms {missing:?}", s.total, s.mismatch);
    line(4, ok, text, &c)
}

fn criterion5(pool: &rayon::ThreadPool) -> Line {
    let c = collect(5, pool);
    let s = &c.summary;
    let ok = s.mismatch == 0 && s.error == 0 && s.equal > 0;
    let text = format!(
        "transform route vs direct sum, {} equal, {} outside the sufficiency region, {} mismatches",
        s.equal, s.skipped_precondition, s.mismatch
    );
    line(5, ok, text, &c)
}

fn criterion6(pool: &rayon::ThreadPool) -> Line {
    let c = collect(6, pool);
    let s = &c.summary;
    let differ = c
        .reports
        .iter()
        .filter(|r| r.identity_id == "multinom.difference")
        .any(|r| r.params.get("f_equals_g") == Some(&Value::from("false")));
    let ok = s.total > 0 && s.equal == s.total && differ;
    let text = format!("q-multinomials, {} points exact, {} mismatches, unsubtracted sides differ somewhere: {differ}", s.equal, s.mismatch);
    line(6, ok, text, &c)
}

fn criterion7(pool: &rayon::ThreadPool) -> Line {
    let c = collect(7, pool);
    let s = &c.summary;
    let ok = s.total > 0 && s.equal == s.total && c.elapsed < Duration::from_secs(180);
    let text = format!("series to truncation (D=25, products D=30, strings D=20), {} checks exact, limit 180s", s.equal);
    line(7, ok, text, &c)
}

fn criterion8(pool: &rayon::ThreadPool) -> Line {
    let c = collect(8, pool);
    let s = &c.summary;
    let ok = s.total > 0 && s.equal == s.total;
    let text = format!("oracles, partitions to D=50 and lattice enumeration N<=4, {} of {} agree", s.equal, s.total);
    line(8, ok, text, &c)
}

fn main() -> ExitCode {
    let pool = rayon::ThreadPoolBuilder::new().build().expect("thread pool");
    let checks: [fn(&rayon::ThreadPool) -> Line; 8] =
        [criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8];
    let mut failed = 0;
    for check in checks {
        let l = check(&pool);
        println!("{} {}", if l.ok { "PASS" } else { "FAIL" }, l.text);
        failed += usize::from(!l.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
