use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ginv_core::io::{read_report, InstanceFile};
use ginv_core::{worked_example, Matrix, Rational, ScalarMode};

fn ginv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ginv"))
        .args(args)
        .env_remove("GINV_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn worked_file(dir: &Path) -> PathBuf {
    let file = InstanceFile::from_blocks(&worked_example::instance(), ScalarMode::Rational);
    write(dir, "worked.json", &file.to_json_string())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn drazin_of_nilpotent_block_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = worked_file(dir.path());
    let out = ginv(&["drazin", s(&f), "--block", "D"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("index: 2"), "{text}");
    assert!(text.contains("[0 0]\n[0 0]"), "{text}");
    assert!(text.contains("axioms: hold"));
}

#[test]
fn drazin_of_identity_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "id.json",
        r#"{"schema": "block-instance/1", "scalar": "rational", "matrix": [["1", "0"], ["0", "1"]]}"#,
    );
    let out = ginv(&["drazin", s(&f)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[1 0]\n[0 1]"));
    let out = ginv(&["drazin", s(&f), "--mode", "float"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("max residual"));
}

#[test]
fn group_and_index() {
    let dir = tempfile::tempdir().unwrap();
    let f = worked_file(dir.path());
    assert_eq!(code(&ginv(&["group", s(&f), "--block", "D"])), 1);
    let out = ginv(&["group", s(&f), "--block", "A"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[1 1 0]"));
    assert_eq!(stdout(&ginv(&["index", s(&f), "--block", "M"])).trim(), "3");
}

#[test]
fn schur_and_peirce_print_their_parts() {
    let dir = tempfile::tempdir().unwrap();
    let f = worked_file(dir.path());
    let out = ginv(&["schur", s(&f)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("z1 = D^pi Z D^pi"));
    for corner in ["E", "G", "H"] {
        assert_eq!(code(&ginv(&["peirce", s(&f), "--corner", corner])), 0);
    }
}

#[test]
fn verify_worked_example_reproduces_displayed_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let f = worked_file(dir.path());
    let out = ginv(&["verify", "cor-4-3a", s(&f)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_report(&stdout(&out)).unwrap();
    assert!(report.matched);
    let m: Matrix<Rational> = report.formula_outputs[0].decode().unwrap();
    assert_eq!(m, worked_example::expected_drazin());
}

#[test]
fn report_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = worked_file(dir.path());
    let path = dir.path().join("report.json");
    assert_eq!(code(&ginv(&["verify", "thm-4-2", s(&f), "--out", s(&path)])), 0);
    let report = read_report(&fs::read_to_string(&path).unwrap()).unwrap();
    let again = read_report(&report.to_json_string()).unwrap();
    assert_eq!(report, again);
}

#[test]
fn violated_hypothesis_exits_one_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "v.json",
        r#"{"schema": "block-instance/1", "A": [["1"]], "B": [["0"]], "C": [["1"]], "D": [["0"]]}"#,
    );
    let out = ginv(&["verify", "thm-4-2", s(&f)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("ACD^π = 0"), "{}", stderr(&out));
    let report = read_report(&stdout(&out)).unwrap();
    assert!(!report.matched);

    let out = ginv(&["verify", "thm-4-2", s(&f), "--strict"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("hypothesis violated: ACD^π = 0"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn unknown_theorem_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let f = worked_file(dir.path());
    assert_eq!(code(&ginv(&["verify", "thm-9-9", s(&f)])), 4);
}

#[test]
fn malformed_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"schema": "block-instance/1", "matrix": [["1"], ["2", "3"]]}"#,
        r#"{"schema": "block-instance/1", "matrix": [["1/0"]]}"#,
        r#"{"schema": "block-instance/1", "matrix": [["x"]]}"#,
        r#"{"schema": "other", "matrix": [["1"]]}"#,
        "{",
    ];
    for (i, text) in cases.iter().enumerate() {
        let f = write(dir.path(), &format!("bad{i}.json"), text);
        assert_eq!(code(&ginv(&["drazin", s(&f)])), 2, "{text}");
    }
    assert_eq!(code(&ginv(&["drazin", "/nonexistent/file.json"])), 2);
    let f = worked_file(dir.path());
    assert_eq!(code(&ginv(&["drazin", s(&f), "--block", "B"])), 2);
}

#[test]
fn generate_ac0_db0() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let args = ["generate", "--condition", "ac0_db0", "--n", "3", "--m", "2", "--index-a", "1", "--index-d", "2", "--seed", "42"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", s(&path)]);
    let out = ginv(&with_out);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("holds"));
    let inst = InstanceFile::parse(&fs::read_to_string(&path).unwrap())
        .unwrap()
        .reference_blocks()
        .unwrap();
    assert!((&inst.a * &inst.c).is_zero());
    assert!((&inst.d * &inst.b).is_zero());
    // Same seed, same file.
    assert_eq!(stdout(&ginv(&args)).trim(), fs::read_to_string(&path).unwrap().trim());
}

#[test]
fn generate_smallest_instance() {
    let out = ginv(&["generate", "--condition", "none", "--n", "1", "--m", "1", "--index-a", "0", "--index-d", "0", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let inst = InstanceFile::parse(&stdout(&out)).unwrap().reference_blocks().unwrap();
    assert_eq!(inst.assemble().shape(), (2, 2));
}

#[test]
fn generated_equiv_true_instance_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    let out = ginv(&[
        "generate", "--condition", "equiv_true", "--n", "3", "--m", "3", "--index-a", "1", "--index-d", "1", "--seed", "7",
        "--out", s(&path),
    ]);
    assert_eq!(code(&out), 0);
    let out = ginv(&["verify", "thm-2-equiv", s(&path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_report(&stdout(&out)).unwrap();
    assert!(report.statements.len() >= 12);
    assert!(report.statements.iter().all(|c| c.holds));
}

#[test]
fn infeasible_spec_exits_five() {
    let out = ginv(&["generate", "--condition", "none", "--n", "1", "--m", "1", "--index-a", "3", "--index-d", "0", "--seed", "1"]);
    assert_eq!(code(&out), 5);
    let out = ginv(&["generate", "--condition", "bogus", "--n", "1", "--m", "1", "--index-a", "0", "--index-d", "0", "--seed", "1"]);
    assert_ne!(code(&out), 0);
}

#[test]
fn paper_example_and_negative_control() {
    let out = ginv(&["paper-example"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().last(), Some("PASS"));
    let out = ginv(&["paper-example", "--inject-perturbation"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).lines().last(), Some("FAIL"));
    assert_eq!(code(&ginv(&["paper-example", "--mode", "float"])), 0);
}

#[test]
fn batch_verification() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..4 {
        let path = dir.path().join(format!("i{seed}.json"));
        let out = ginv(&[
            "generate", "--condition", "ac0_db0", "--n", "2", "--m", "2", "--index-a", "1", "--index-d", "2", "--seed",
            &seed.to_string(), "--out", s(&path),
        ]);
        assert_eq!(code(&out), 0);
    }
    let out = ginv(&["verify", "cor-4-3a", "--batch", s(dir.path())]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 4);

    write(
        dir.path(),
        "z_violates.json",
        r#"{"schema": "block-instance/1", "A": [["1"]], "B": [["0"]], "C": [["1"]], "D": [["0"]]}"#,
    );
    assert_eq!(code(&ginv(&["verify", "cor-4-3a", "--batch", s(dir.path())])), 1);
    write(dir.path(), "zz_broken.json", "{");
    assert_eq!(code(&ginv(&["verify", "cor-4-3a", "--batch", s(dir.path())])), 2);
}

#[test]
fn float_mode_reports_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let f = worked_file(dir.path());
    let out = ginv(&["verify", "cor-4-3a", s(&f), "--mode", "float"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_report(&stdout(&out)).unwrap();
    assert_eq!(report.mode, ScalarMode::Float);
    assert!(!report.residuals.is_empty());
    assert!(stderr(&out).contains("max residual"));

    let float_file = write(
        dir.path(),
        "float.json",
        r#"{"schema": "block-instance/1", "scalar": "float",
            "A": [[0.5, 0.0], [0.0, 0.0]], "B": [[0.0, 0.0]], "C": [[0.0], [0.0]], "D": [[2.0]]}"#,
    );
    let out = ginv(&["verify", "cor-4-3a", s(&float_file)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read_report(&stdout(&out)).unwrap().mode, ScalarMode::Float);
}

#[test]
fn quick_selftest_honours_seed_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_ginv"))
        .args(["selftest", "--quick"])
        .env("GINV_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("seed 99"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
