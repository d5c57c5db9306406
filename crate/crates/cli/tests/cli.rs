use std::path::Path;
use std::process::{Command, Output};

fn hlmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlmax"))
        .args(args)
        .env("RAYON_NUM_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn counterexample_n100_holds() {
    let out = hlmax(&["counterexample", "--n", "100"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["inequalityHolds"], true);
    assert_eq!(v["normBoundHolds"], true);
    assert_eq!(v["dn"], "19999/40000");
}

#[test]
fn counterexample_sweep_is_csv() {
    let out = hlmax(&["counterexample", "--sweep", "3:12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines[0].starts_with("n,dn,"));
    assert!(lines[1].starts_with("3,17/36,"));
}

#[test]
fn maximal_curve_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = hlmax(&["maximal-curve", "--fn", "hat", "--grid", "0:1:101", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[0], "x,value_p,value_q,value_s,value_float");
    // Mf(0) = 2 - √2 for the hat.
    assert_eq!(lines[1], "0/1,2/1,-1/1,2/1,5.8578643762690497e-1");
    assert!(lines[101].starts_with("1/1,1/1,0/1,"));
}

#[test]
fn annular_decay_on_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "simplex4.csv", "# four points, all at distance 1\n0,1,1,1\n1,0,1,1\n1,1,0,1\n1,1,1,0\n");
    let out = hlmax(&["annular-decay", "--space", &space]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(v["bestK"].is_string());
    assert_eq!(v["precisionBits"], 200);
}

#[test]
fn malformed_csv_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "bad.csv", "0,1\n1,zero\n");
    let out = hlmax(&["annular-decay", "--space", &space]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn malformed_function_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", "{\"period\": \"2/1\",\n \"points\": [}");
    let out = hlmax(&["maximal-curve", "--fn", &f, "--grid", "0:1:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(hlmax(&["maximal-curve", "--grid", "0:1"]).status.code(), Some(2));
    assert_eq!(hlmax(&["counterexample", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hlmax(&["counterexample", "--n", "5", "--precision-bits", "20"]).status.code(), Some(2));
    assert_eq!(hlmax(&["holder-norm", "--grid", "0:1:5", "--alpha", "3/2"]).status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let runs = [
        vec!["verify-theorem1", "--trials", "3", "--seed", "7", "--grid-count", "16", "--pairs", "50"],
        vec!["holder-norm", "--fn", "hat", "--grid", "-1:1:41", "--alpha", "tent"],
        vec!["lemma-check", "--seed", "3", "--random", "2", "--grid-count", "1000"],
    ];
    for args in runs {
        let a = hlmax(&args);
        let b = Command::new(env!("CARGO_BIN_EXE_hlmax"))
            .args(&args)
            .env("RAYON_NUM_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn average_profile_maximum() {
    let out = hlmax(&["average-profile", "--fn", "hat", "--x", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(!v["profile"]["pieces"].as_array().unwrap().is_empty());
    assert_eq!(v["maximum"]["p"], "2/1");
    assert_eq!(v["maximum"]["q"], "-1/1");
    let (lo, hi) = (v["maximumEnclosure"]["lo"].as_f64().unwrap(), v["maximumEnclosure"]["hi"].as_f64().unwrap());
    let exact = 2.0 - 2f64.sqrt();
    assert!(lo <= exact + 1e-15 && exact - 1e-15 <= hi);
}

#[test]
fn holder_norm_reports_witness_points() {
    let out = hlmax(&["holder-norm", "--fn", "hat", "--grid", "0:1:11", "--alpha", "1", "--target", "f"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["report"]["seminorm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["witnessPoints"].is_array());
}

#[test]
fn continuity_with_shift_count() {
    let out = hlmax(&["verify-continuity", "--shift-count", "4", "--grid", "0:1:21"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["allBoundsHold"], true);
}

#[test]
fn help_mentions_threads_and_formats() {
    let out = hlmax(&["--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("RAYON_NUM_THREADS"));
    assert!(text.contains("num/den"));
}
