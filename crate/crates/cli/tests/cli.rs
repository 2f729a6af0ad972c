use std::process::{Command, Output};

use serde_json::Value;

fn qsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsum")).args(args).env("NO_COLOR", "1").output().expect("spawn qsum")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn eval_qbin() {
    let o = qsum(&["eval", "qbin", "--m", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + q + 2*q^2 + q^3 + q^4");
    let o = qsum(&["eval", "qbin", "--m", "-1", "--n", "0"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn eval_trinomial() {
    let o = qsum(&["eval", "tmultinomial", "--N", "2", "--L", "1", "--a", "0", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^(1/2)");
    let o = qsum(&["eval", "tmultinomial", "--N", "2", "--L", "2", "--a", "0"]);
    assert_eq!(stdout(&o).trim(), "1 + q + q^2");
}

#[test]
fn eval_unknown_id() {
    assert_eq!(qsum(&["eval", "nope"]).status.code(), Some(2));
}

#[test]
fn eval_partitions() {
    let o = qsum(&["eval", "partitions", "--trunc", "5"]);
    assert_eq!(stdout(&o).trim(), "1 + q + 2*q^2 + 3*q^3 + 5*q^4 + 7*q^5");
}

#[test]
fn verify_small_gensum() {
    let o = qsum(&["verify", "gensum", "--N", "1..3", "--M", "0..4", "--L1", "0..3", "--L2", "0..3", "--ell", "-2..2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["mismatch"], 0);
    assert_eq!(summary["total"].as_u64().unwrap() as usize, lines.len() - 1);
    for r in &lines[..lines.len() - 1] {
        assert_eq!(r["verdict"], "equal");
        assert!(r.get("diff_repr").is_none());
    }
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["verify", "gensum", "--L1", "3..1"][..],
        &["verify", "gensum", "--a", "1"],
        &["verify", "nope"],
        &["verify", "gensum", "--N", "1/2"],
        &["verify", "series.durfee", "--trunc", "-1"],
        &["verify", "gensum", "--bogus", "1"],
    ] {
        let o = qsum(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(qsum(&["--help"]).status.code(), Some(0));
    assert_eq!(qsum(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn qs2_exceptional_points_record_sides() {
    let o = qsum(&["verify", "qs2", "--include-exceptional", "--L1", "1", "--L2", "-1", "--M", "0", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["verdict"], "skipped_precondition");
    assert_eq!(r["lhs_repr"], "0");
    assert_eq!(r["rhs_repr"], "1");
    let o = qsum(&["verify", "qs2", "--L1", "1", "--L2", "-1", "--M", "0", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["total"], 0);
}

#[test]
fn tree_depth_two() {
    let o = qsum(&["tree", "--depth", "2", "--N", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let nodes = doc["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 7);
    assert!(nodes[0]["parent"].is_null());
    for n in nodes {
        assert_ne!(n["verified"], false);
    }
}

#[test]
fn tree_depth_zero_and_cap() {
    let o = qsum(&["tree", "--depth", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 1);
    assert_eq!(doc["nodes"][0]["verified"], true);
    assert_eq!(qsum(&["tree", "--depth", "99"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "burge.traf1", "--N", "1..2", "--M", "0..3", "--L", "0..3", "--no-timing", "--jobs"];
    let a = qsum(&[&args[..], &["4"]].concat());
    let b = qsum(&[&args[..], &["1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_and_text_format() {
    let dir = std::env::temp_dir().join(format!("qsum-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.txt");
    let o = qsum(&["verify", "series.product", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().last().unwrap().starts_with("summary series.product"));
    assert!(!text.contains('\u{1b}'));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn list_names_every_family() {
    let o = qsum(&["list"]);
    let text = stdout(&o);
    for id in ["gensum", "qs2", "sears", "burge.traf2", "multinom.tnew", "series.string", "oracle.lattice"] {
        assert!(text.contains(id), "{id}");
    }
}
