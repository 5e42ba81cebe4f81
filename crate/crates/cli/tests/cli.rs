use std::path::PathBuf;
use std::process::{Command, Output};

use goeritz_core::io::{matrix_from_csv, MatrixJson};
use goeritz_core::{parse_pd, DiagramAnalysis};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(format!("{name}.pd"))
        .to_string_lossy()
        .into_owned()
}

fn goeritz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goeritz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = goeritz(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

#[test]
fn regions_of_worked_example() {
    let v = json(&["regions", "-i", &fixture("8_19"), "--format", "json"]);
    assert_eq!(v["m"], 10);
    assert_eq!(v["b"], 5);
    assert_eq!(v["prime"], true);
    assert_eq!(v["name"], "8_19");
}

#[test]
fn trefoil_shaded_class_depends_on_selector() {
    let sizes: Vec<u64> = (0..5)
        .map(|s| {
            let v = json(&[
                "regions",
                TREFOIL,
                "--shade",
                &s.to_string(),
                "--format",
                "json",
            ]);
            assert_eq!(v["m"], 5);
            v["b"].as_u64().unwrap()
        })
        .collect();
    assert!(sizes.contains(&2) && sizes.contains(&3));
    assert!(sizes.iter().all(|b| *b == 2 || *b == 3));
}

#[test]
fn malformed_input_exits_two() {
    let out = goeritz(&["regions", "X 1 2 3 4 / X 1 5 6 7"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("appears"), "{err}");
    let out = goeritz(&["dehn", "-i", "/nonexistent/file.pd"]);
    assert_eq!(out.status.code(), Some(2));
    let out = goeritz(&["regions", TREFOIL, "--shade", "17"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_verdicts_on_worked_example_and_trefoil() {
    for args in [
        vec!["-i".to_string(), fixture("8_19")],
        vec![TREFOIL.to_string()],
    ] {
        let mut full = vec!["check", "--format", "json"];
        full.extend(args.iter().map(String::as_str));
        let v = json(&full);
        let verdicts = &v["verdicts"];
        assert_eq!(verdicts["thm1_exact_match"], true);
        assert_eq!(verdicts["thm2_match_up_to_sign"], true);
        assert_eq!(verdicts["right_block_zero"], true);
    }
}

#[test]
fn check_skips_algebraic_method_on_composite() {
    let out = goeritz(&["check", "-i", &fixture("granny"), "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["thm2"], "skipped: not prime");
    assert_eq!(v["verdicts"]["thm2_match_up_to_sign"], "skipped: not prime");
    assert_eq!(v["verdicts"]["thm1_exact_match"], true);
    let pretty = stdout(&goeritz(&["check", "-i", &fixture("square")]));
    assert!(pretty.contains("thm2 skipped: not prime"));
}

#[test]
fn algebraic_method_on_composite_is_a_precondition_error() {
    let out = goeritz(&["reconstruct", "--method", "thm2", "-i", &fixture("square")]);
    assert_eq!(out.status.code(), Some(3));
    let out = goeritz(&[
        "reconstruct",
        "--method",
        "thm2",
        "--force",
        "-i",
        &fixture("square"),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn determinants() {
    assert_eq!(
        stdout(&goeritz(&["det", "-i", &fixture("8_19")])).trim(),
        "3"
    );
    assert_eq!(stdout(&goeritz(&["det", TREFOIL])).trim(), "3");
    assert_eq!(stdout(&goeritz(&["det", "unknot"])).trim(), "1");
    let v = json(&["det", "-i", &fixture("6_1"), "--format", "json"]);
    assert_eq!(v["determinant"], "9");
}

#[test]
fn colorability_reports() {
    let v = json(&[
        "colorable",
        "-p",
        "3",
        "-i",
        &fixture("8_19"),
        "--format",
        "json",
    ]);
    assert_eq!(v["colorable"], true);
    assert_eq!(v["kernel_dimension"], 3);
    assert_eq!(v["determinant_agrees"], true);
    let v = json(&[
        "colorable",
        "-p",
        "5",
        "-i",
        &fixture("8_19"),
        "--format",
        "json",
    ]);
    assert_eq!(v["colorable"], false);
    let v = json(&[
        "colorable",
        "-p",
        "9",
        "-i",
        &fixture("6_1"),
        "--format",
        "json",
    ]);
    assert_eq!(v["colorable"], true);
    assert!(v.get("kernel_dimension").is_none());
    let out = goeritz(&["colorable", "-p", "1", TREFOIL]);
    assert_eq!(out.status.code(), Some(2));
    let out = goeritz(&["colorable", TREFOIL]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrices_round_trip_through_json_and_csv() {
    let path = fixture("8_19");
    let text = std::fs::read_to_string(&path).unwrap();
    let a = DiagramAnalysis::new(parse_pd(&text).unwrap(), None).unwrap();

    let out = goeritz(&["dehn", "-i", &path, "--format", "json"]);
    let m: MatrixJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(m.to_matrix().unwrap(), a.dehn.matrix);
    assert_eq!(m.col_region.as_deref(), Some(a.dehn.col_region.as_slice()));

    let out = goeritz(&["goeritz", "-i", &path, "--format", "json"]);
    let m: MatrixJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(m.to_matrix().unwrap(), a.goeritz.matrix);

    let out = goeritz(&["goeritz", "-i", &path, "--format", "csv"]);
    assert_eq!(matrix_from_csv(&stdout(&out)).unwrap(), a.goeritz.matrix);

    let out = goeritz(&["reconstruct", "-i", &path, "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let left: MatrixJson = serde_json::from_value(v["left"].clone()).unwrap();
    assert_eq!(left.to_matrix().unwrap(), a.goeritz.matrix);
    assert_eq!(v["exact_match"], true);
}

#[test]
fn anchor_override_negates_the_algebraic_row_before_normalization() {
    let path = fixture("8_19");
    let base = json(&[
        "reconstruct",
        "--method",
        "thm2",
        "-i",
        &path,
        "--format",
        "json",
    ]);
    let flipped = json(&[
        "reconstruct",
        "--method",
        "thm2",
        "--anchor",
        "0:-",
        "-i",
        &path,
        "--format",
        "json",
    ]);
    let raw = |v: &Value| {
        serde_json::from_value::<MatrixJson>(v["unnormalized"].clone())
            .unwrap()
            .to_matrix()
            .unwrap()
    };
    assert_eq!(raw(&flipped), raw(&base).neg());
    assert_eq!(base["left"], flipped["left"]);
    let out = goeritz(&[
        "reconstruct",
        "--method",
        "thm2",
        "--anchor",
        "0:nope",
        "-i",
        &path,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_goeritz"))
        .args(["det"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"# figure eight\nX[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "5");
}
