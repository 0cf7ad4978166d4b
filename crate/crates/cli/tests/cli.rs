//! End-to-end tests against the built binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lagsob"))
}

fn write_spec(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const REFERENCE_SPEC: &str =
    r#"{"alpha": 3, "m": 3, "M": [["1","1","0"],["1","1","0"],["0","0","1"]], "N": 8}"#;

fn run(args: &[&str], input: Option<&std::path::Path>) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    if let Some(path) = input {
        cmd.arg("--input").arg(path);
    }
    cmd.output().unwrap()
}

#[test]
fn verify_reference_passes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "spec.json", REFERENCE_SPEC);
    let out = run(&["verify", "--upto", "8"], Some(&spec));
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: pass"));
    assert!(text.contains("eigen[n=8]"));
}

#[test]
fn awr_reference_prints_exact_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "spec.json", REFERENCE_SPEC);
    let out = run(&["awr", "--format", "json"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"nj\":[5,4,0],\"mj\":[2,0],\"awr\":8}\n"
    );
}

#[test]
fn alpha_below_m_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "bad.json",
        r#"{"alpha": 2, "m": 3, "M": [["0","0","0"],["0","0","0"],["0","0","0"]]}"#,
    );
    let out = run(&["construct"], Some(&spec));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires alpha >= m"));
}

#[test]
fn malformed_json_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "broken.json", "{not json");
    let out = run(&["verify"], Some(&spec));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
}

#[test]
fn non_square_mass_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "rect.json",
        r#"{"alpha": 3, "m": 2, "M": [["1","0","0"],["0","1","0"]]}"#,
    );
    let out = run(&["awr"], Some(&spec));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vanishing_casorati_is_check_failure() {
    // this non-symmetric instance has Omega(2) = 0
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "vanishing.json",
        r#"{"alpha": 3, "m": 3, "M": [["1","1","0"],["2","1","0"],["0","-1","1"]]}"#,
    );
    let out = run(&["construct"], Some(&spec));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n = 2"));
}

#[test]
fn reproduce_example_passes() {
    let out = run(&["reproduce-example"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["R_1", "R_2", "R_3", "Omega", "P_S", "M_1", "M_2", "M_3", "order", "awr"] {
        assert!(text.contains(&format!("PASS {name}")), "missing {name}");
    }
}

#[test]
fn emitted_json_round_trips_byte_identically() {
    fn round_trip<T: serde::de::DeserializeOwned + serde::Serialize>(emitted: &str) -> String {
        let doc: T = serde_json::from_str(emitted).unwrap();
        let mut again = serde_json::to_string(&doc).unwrap();
        again.push('\n');
        again
    }
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "spec.json", REFERENCE_SPEC);
    for command in ["construct", "operator", "awr", "verify"] {
        let out = run(&[command, "--format", "json", "--upto", "4"], Some(&spec));
        assert_eq!(out.status.code(), Some(0), "{command}");
        let emitted = String::from_utf8(out.stdout).unwrap();
        let again = match command {
            "construct" => round_trip::<lagsob_core::io::ConstructDoc>(&emitted),
            "operator" => round_trip::<lagsob_core::io::OperatorDoc>(&emitted),
            "awr" => round_trip::<lagsob_core::io::AwrDoc>(&emitted),
            _ => round_trip::<lagsob_core::report::Report>(&emitted),
        };
        assert_eq!(emitted, again, "round trip for {command}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "spec.json", REFERENCE_SPEC);
    let out_path = dir.path().join("result.json");
    let out = bin()
        .args(["awr", "--format", "json", "--output"])
        .arg(&out_path)
        .arg("--input")
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written, "{\"nj\":[5,4,0],\"mj\":[2,0],\"awr\":8}\n");
}

#[test]
fn stdin_input_works() {
    let mut child = bin()
        .args(["awr", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(REFERENCE_SPEC.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"awr\":8"));
}

#[test]
fn upto_overrides_document_n() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "spec.json", REFERENCE_SPEC); // N = 8 inside
    let out = run(&["construct", "--format", "json", "--upto", "2"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(value["q"].as_array().unwrap().len(), 3);
}

#[test]
fn operator_json_reports_order_and_eigenvalues() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "spec.json", REFERENCE_SPEC);
    let out = run(&["operator", "--format", "json", "--upto", "3"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(value["order"], 18);
    assert_eq!(value["eigenvalues"].as_array().unwrap().len(), 4);
    assert_eq!(value["eigenvalues"][0], "0");
    // D has order+1 coefficient polynomials
    assert_eq!(value["D"].as_array().unwrap().len(), 19);
    assert_eq!(value["Mh"].as_array().unwrap().len(), 3);
}

#[test]
fn custom_s_changes_order() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "sx.json",
        r#"{"alpha": 3, "m": 3, "M": [["1","1","0"],["1","1","0"],["0","0","1"]], "S": ["0","1"]}"#,
    );
    let out = run(&["operator", "--format", "json", "--upto", "2"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(value["order"], 20);
}

#[test]
fn threads_flag_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "spec.json", REFERENCE_SPEC);
    let out = run(&["verify", "--threads", "2", "--upto", "3"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
}
