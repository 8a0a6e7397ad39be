use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_congruence-h1"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn compute_report_has_stable_keys() {
    let (code, out, _) = run(&["compute", "--n", "3", "--q", "2", "--radius", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    let mut expected = vec![
        "n",
        "q",
        "radius",
        "num_vertices",
        "num_edges",
        "dim_c0",
        "dim_c1",
        "rank_boundary",
        "dim_h0",
        "target",
        "meets_conjecture",
        "counts_note",
        "timing_ms",
    ];
    expected.sort();
    let mut keys_sorted = keys.clone();
    keys_sorted.sort();
    assert_eq!(keys_sorted, expected);
    assert_eq!(v["dim_h0"], 8);
    assert_eq!(v["meets_conjecture"], true);
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = run(&["compute", "--omit-timing", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"rank_boundary\": 20"));
    assert!(text.contains("\"timing_ms\": null"));
}

#[test]
fn composite_q() {
    let (code, _, err) = run(&["compute", "--n", "3", "--q", "4", "--radius", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("q must be prime"));
}

#[test]
fn n2_is_a_finding() {
    let (code, out, _) = run(&["compute", "--n", "2", "--q", "2", "--radius", "2"]);
    assert_eq!(code, 3);
    assert!(out.contains("\"dim_h0\": 6"));
}

#[test]
fn survive_examples() {
    assert_eq!(
        run(&["survive", "--n", "3", "--bounds", "1,1,3"]).1,
        "(1,2):[1] (2,3):[1] (1,3):[1,3]\ndim 4\n"
    );
    assert_eq!(run(&["survive", "--n", "3", "--bounds", "1,1,1"]).0, 2);
}

#[test]
fn oracle_sweeps_pass() {
    let (code, out, _) = run(&["oracle", "--n", "3", "--q", "2", "--radius", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 failed, 0 skipped"));
    let (code, out, _) = run(&["oracle", "--n", "3", "--q", "2", "--radius", "1", "--limit", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("skipped"));
}

#[test]
fn export_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _, _) = run(&["export", "--n", "3", "--q", "2", "--radius", "1", "--out-dir", d]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(dir.path().join("z_n3_q2_r1.dot")).unwrap();
    let matrix = std::fs::read_to_string(dir.path().join("boundary_n3_q2_r1.txt")).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains(" [std=")).count(), 15);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 35);
    assert_eq!(dot.lines().filter(|l| l.contains("origin=true")).count(), 1);
    assert_eq!(matrix.lines().next(), Some("28 21 2"));

    let dot2 = dir.path().join("again.dot");
    let m2 = dir.path().join("again.txt");
    run(&[
        "export",
        "--dot",
        dot2.to_str().unwrap(),
        "--matrix",
        m2.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(dot2).unwrap(), dot);
    assert_eq!(std::fs::read_to_string(m2).unwrap(), matrix);
}

#[test]
fn unwritable_path() {
    let (code, _, _) = run(&["compute", "--out", "/nonexistent-dir/x/report.json"]);
    assert_eq!(code, 2);
}
