use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flagpos"))
}

fn inputs(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata/v1/inputs").join(name)
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().expect("wait")
}

fn run_file(args: &[&str], file: &str) -> Output {
    let path = inputs(file);
    bin()
        .args(args)
        .arg("--in")
        .arg(&path)
        .output()
        .expect("run")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_matroid_uniform() {
    let out = run_file(&["check-matroid"], "u24.json");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"matroid": true}));
    let out = run_stdin(&["check-matroid"], r#"{"n": 4, "bases": [[1,2],[3,4]]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["matroid"], false);
}

#[test]
fn quotient_worked_example() {
    let out = run_file(&["quotient"], "quotient_pair.json");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out), serde_json::json!({"quotient": false, "failed_condition": 3}));
}

#[test]
fn quotient_rule_selection() {
    // Bases {1} and {12} on [3]: a positively oriented quotient that the
    // printed form of condition (4) rejects.
    let pair = |rule: &str| {
        format!(r#"{{"n": 3, "low": [[1],[1],[1]], "high": [[1,2],[1,2],[1,2]], "rule": "{rule}"}}"#)
    };
    let out = run_stdin(&["quotient"], &pair("corrected"));
    assert_eq!(out.status.code(), Some(0));
    let out = run_stdin(&["quotient"], &pair("printed"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["failed_condition"], 4);
    let out = run_stdin(&["quotient"], &pair("sideways"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["pointer"], "/rule");
}

#[test]
fn subdivide_figure1_left() {
    let out = run_file(&["subdivide"], "fig1.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    let mut bases: Vec<Vec<Vec<u64>>> = cells
        .iter()
        .map(|c| {
            assert_eq!(c["flag_positroid"], true);
            let mut b: Vec<Vec<u64>> = serde_json::from_value(c["flag_matroid"]["matroids"][0].clone()).unwrap();
            b.sort();
            b
        })
        .collect();
    bases.sort();
    assert_eq!(
        bases,
        vec![
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]],
            vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]],
        ]
    );
    assert_eq!(v["fvector"], serde_json::json!([6, 12, 9, 2]));
}

#[test]
fn subdivide_hexagon_labels_intervals() {
    let out = run_file(&["subdivide"], "perm3_split.json");
    let v = json(&out);
    let mut ivs: Vec<String> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["interval"].to_string())
        .collect();
    ivs.sort();
    assert_eq!(ivs.len(), 2);
    assert!(ivs.iter().all(|s| s.contains("\"u\"")));
}

#[test]
fn emitted_json_is_accepted_back() {
    // necklace: matroid -> necklace -> matroid
    let out = run_file(&["necklace"], "u24.json");
    let neck = String::from_utf8(out.stdout).unwrap();
    let back = run_stdin(&["necklace"], &neck);
    assert_eq!(back.status.code(), Some(0));
    let mut bases: Vec<Vec<u64>> = serde_json::from_value(json(&back)["bases"].clone()).unwrap();
    bases.sort();
    assert_eq!(bases.len(), 6);
    let again = run_stdin(&["check-matroid"], &String::from_utf8(back.stdout).unwrap());
    assert_eq!(again.status.code(), Some(0));

    // subdivide: each cell's flag matroid is a valid pom/envelope input.
    let out = run_file(&["subdivide"], "perm3_split.json");
    for c in json(&out)["cells"].as_array().unwrap() {
        let text = c["flag_matroid"].to_string();
        assert_eq!(run_stdin(&["pom"], &text).status.code(), Some(0));
        assert_eq!(run_stdin(&["envelope"], &text).status.code(), Some(0));
    }
}

#[test]
fn pom_rejects_notreal() {
    let out = run_file(&["pom"], "notreal.json");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pom"], false);
    assert_eq!(v["flag_matroid"], true);
}

#[test]
fn fldr_reports_violation() {
    let out = run_file(&["fldr"], "perm3_split.json");
    assert_eq!(out.status.code(), Some(0));
    // Swapping the rank-1 heights breaks positivity but not the Dressian.
    let text = r#"[{"n":3,"r":1,"coords":{"1":"0","2":"1","3":"0"}},
                   {"n":3,"r":2,"coords":{"1,2":"0","1,3":"1","2,3":"0"}}]"#;
    let out = run_stdin(&["fldr"], text);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(1), "{v}");
    assert_eq!(v["in_fldr_nonneg"], false);
    assert!(v["violation"].is_object());
}

#[test]
fn invalid_input_has_pointer() {
    let out = run_stdin(&["check-matroid"], r#"{"n": 4, "bases": [[1, 2], [1, "a"]]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["pointer"], "/bases/1/1");
    let out = run_stdin(&["fldr"], r#"{"n": 4, "r": 2, "coords": {"1,5": "0"}}"#);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["pointer"], "/coords/1,5");
    let out = run_stdin(&["pom"], "not json");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_targets() {
    let out = bin().args(["reproduce", "figure1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "reproduce figure1");
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);

    let out = bin().args(["reproduce", "table2"]).env("FLAGPOS_JOBS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(stderr.contains("row 4:"), "{stderr}");
    assert_eq!(json(&out)["results"]["rows_passed"], 8);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("flagpos-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = bin()
        .args(["check-positroid", "--in"])
        .arg(inputs("u24.json"))
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["positroid"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn suite_is_seeded_and_deterministic() {
    let run = || {
        bin()
            .args(["suite", "duality", "--seed", "9", "--scale", "0.05", "--jobs", "2"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed: 9"));
    let (mut va, mut vb) = (json(&a), json(&b));
    assert_eq!(va["seed"], 9);
    for v in [&mut va, &mut vb] {
        v["elapsed_ms"] = Value::Null;
        v["results"][0]["elapsed_ms"] = Value::Null;
    }
    assert_eq!(va, vb);
}
