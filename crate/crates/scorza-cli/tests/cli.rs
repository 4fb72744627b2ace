//! End-to-end tests of the binary: golden transcripts, byte determinism,
//! exit-status contract, and payload round-trips.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_scorza"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn scorza");
    child
        .stdin
        .as_mut()
        .expect("stdin")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait")
}

fn golden(name: &str) -> (String, String) {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/");
    let requests = std::fs::read_to_string(format!("{dir}{name}.jsonl")).expect("requests");
    let expected = std::fs::read_to_string(format!("{dir}{name}.expected")).expect("expected");
    (requests, expected)
}

#[test]
fn golden_pencil_representatives() {
    let (requests, expected) = golden("pencil_reps");
    let out = run_with_stdin(&["run"], &requests);
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);
    // the corpus deliberately ends with a degenerate codiagonalization
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn golden_scorza_model_points() {
    let (requests, expected) = golden("scorza_model");
    let out = run_with_stdin(&["run"], &requests);
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn golden_spinor_model_pairs() {
    let (requests, expected) = golden("spinor_model");
    let out = run_with_stdin(&["run"], &requests);
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let (requests, _) = golden("scorza_model");
    let a = run_with_stdin(&["run"], &requests);
    let b = run_with_stdin(&["run"], &requests);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
}

#[test]
fn malformed_input_exits_one() {
    let out = run_with_stdin(&["det3"], "this is not json\n");
    assert_eq!(out.status.code(), Some(1));
    let line: serde_json::Value =
        serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap())
            .unwrap();
    assert_eq!(line["ok"], serde_json::json!(false));
}

#[test]
fn subgeneric_flop_exits_two() {
    // pencil in a smaller orbit: both forms equal
    let wedge: Vec<Vec<&str>> = vec![
        vec!["0", "1", "0", "0", "0"],
        vec!["-1", "0", "0", "0", "0"],
        vec!["0", "0", "0", "0", "0"],
        vec!["0", "0", "0", "0", "0"],
        vec!["0", "0", "0", "0", "0"],
    ];
    let payload = serde_json::json!({ "omega1": wedge, "omega2": wedge });
    let out = run_with_stdin(&["u-space"], &format!("{payload}\n"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_precondition_error() {
    let out = run_with_stdin(&["verify", "--suite", "nonsense"], "");
    assert_eq!(out.status.code(), Some(2));
    let line: serde_json::Value =
        serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(line["ok"], serde_json::json!(false));
}

#[test]
fn prime_field_flag_changes_the_arithmetic() {
    let payload = r#"{"m":{"n":3,"a":1,"diag":["10006","1","1"],"upper":[]}}"#;
    let out_q = run_with_stdin(&["--field", "Q", "det3"], &format!("{payload}\n"));
    let out_p = run_with_stdin(&["--field", "Fp:10007", "det3"], &format!("{payload}\n"));
    let vq: serde_json::Value =
        serde_json::from_slice(out_q.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    let vp: serde_json::Value =
        serde_json::from_slice(out_p.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(vq["outputs"]["det"], serde_json::json!("10006"));
    assert_eq!(vp["outputs"]["det"], serde_json::json!("10006"));
    // but 10006 + 1 wraps only mod p
    let payload2 = r#"{"m":{"n":1,"a":1,"diag":["10008"],"upper":[]}}"#;
    let out_p2 = run_with_stdin(&["--field", "Fp:10007", "det3"], &format!("{payload2}\n"));
    let vp2: serde_json::Value =
        serde_json::from_slice(out_p2.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(vp2["outputs"]["det"], serde_json::json!("1"));
}

#[test]
fn payload_reserialization_is_identity() {
    // nu2 -> det3 of the emitted matrix: parse, re-emit, byte-compare
    let req = r#"{"z":[{"a":8,"coords":["1","0","0","1","0","0","0","0"]},{"a":8,"coords":["1","2","3","4","5","6","7","-2"]}]}"#;
    let out = run_with_stdin(&["nu2"], &format!("{req}\n"));
    let v: serde_json::Value =
        serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    let matrix = v["outputs"]["matrix"].clone();
    let again = run_with_stdin(
        &["det3"],
        &format!("{}\n", serde_json::json!({ "m": matrix })),
    );
    let v2: serde_json::Value =
        serde_json::from_slice(again.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    // rank-one matrices have vanishing determinant
    assert_eq!(v2["outputs"]["det"], serde_json::json!("0"));
    // and the emitted document parses back to the same bytes
    let reparsed: serde_json::Value = serde_json::from_str(&matrix.to_string()).unwrap();
    assert_eq!(reparsed.to_string(), matrix.to_string());
}

#[test]
fn report_dir_writes_one_file_per_report() {
    let dir = std::env::temp_dir().join(format!("scorza-reports-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let (requests, _) = golden("spinor_model");
    let out = run_with_stdin(
        &["--report-dir", dir.to_str().unwrap(), "run"],
        &requests,
    );
    assert_eq!(out.status.code(), Some(0));
    let count = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(count, requests.lines().filter(|l| !l.trim().is_empty()).count());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_compalg_suite_passes() {
    let out = run_with_stdin(&["verify", "--suite", "compalg", "--seed", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let line: serde_json::Value =
        serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(line["outputs"]["failed"], serde_json::json!(0));
    assert!(line["outputs"]["total"].as_u64().unwrap() >= 16);
}
