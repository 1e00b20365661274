//! End-to-end tests of the `gmf` binary: exit codes, JSON shapes, error
//! objects, and byte-for-byte determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU64, Ordering};

static DIR_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Fresh scratch directory for this test's fixture files.
fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "gmf-cli-test-{}-{}",
        std::process::id(),
        DIR_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write fixture");
    path
}

fn gmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmf"))
        .args(args)
        .env_remove("GMF_SIZE_CAP")
        .output()
        .expect("spawn gmf")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {:?}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn identity_matrix_json(n: usize) -> String {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push(if i == j { [1.0, 0.0] } else { [0.0, 0.0] });
        }
    }
    serde_json::json!({"rows": n, "cols": n, "entries": entries}).to_string()
}

#[test]
fn eval_determinant_of_identity_is_one() {
    let dir = scratch_dir();
    let matrix = write_file(&dir, "I3.json", &identity_matrix_json(3));
    // S3 from a transposition and a 3-cycle, 1-based one-line images.
    let group = write_file(
        &dir,
        "S3.json",
        r#"{"degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]}"#,
    );
    let output = gmf(&[
        "eval",
        "--matrix",
        matrix.to_str().unwrap(),
        "--group",
        group.to_str().unwrap(),
        "--char",
        "sign",
    ]);
    assert!(output.status.success(), "{output:?}");
    assert_eq!(stdout_json(&output)["value"], serde_json::json!([1.0, 0.0]));
}

#[test]
fn eval_accepts_group_family_names() {
    let dir = scratch_dir();
    let matrix = write_file(&dir, "I4.json", &identity_matrix_json(4));
    for family in ["S4", "A4", "C4", "trivial4"] {
        let output = gmf(&[
            "eval",
            "--matrix",
            matrix.to_str().unwrap(),
            "--group",
            family,
            "--char",
            "trivial",
        ]);
        assert!(output.status.success(), "{family}: {output:?}");
        assert_eq!(
            stdout_json(&output)["value"],
            serde_json::json!([1.0, 0.0]),
            "{family}"
        );
    }
}

#[test]
fn induced_modes_agree_on_hermitian_input() {
    let dir = scratch_dir();
    // A real symmetric 2x2 matrix.
    let matrix = write_file(
        &dir,
        "A.json",
        r#"{"rows": 2, "cols": 2, "entries": [[2, 0], [1, 0], [1, 0], [3, 0]]}"#,
    );
    let mut results = Vec::new();
    for mode in ["compression", "entrywise"] {
        let output = gmf(&[
            "induced",
            "--matrix",
            matrix.to_str().unwrap(),
            "--group",
            "S2",
            "--char",
            "trivial",
            "--mode",
            mode,
        ]);
        assert!(output.status.success(), "{mode}: {output:?}");
        let value = stdout_json(&output);
        assert_eq!(value["mode"], mode);
        assert_eq!(
            value["delta_bar"],
            serde_json::json!([[0, 0], [0, 1], [1, 1]])
        );
        results.push(value["matrix"].clone());
    }
    let first: Vec<[f64; 2]> =
        serde_json::from_value(results[0]["entries"].clone()).expect("entries array");
    let second: Vec<[f64; 2]> =
        serde_json::from_value(results[1]["entries"].clone()).expect("entries array");
    assert_eq!(first.len(), 9);
    for (a, b) in first.iter().zip(&second) {
        assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    }
}

#[test]
fn symclass_describes_the_antisymmetric_class() {
    let output = gmf(&["symclass", "--group", "S3", "--n", "3", "--char", "sign"]);
    assert!(output.status.success(), "{output:?}");
    let value = stdout_json(&output);
    assert_eq!(value["m"], 3);
    assert_eq!(value["n"], 3);
    assert_eq!(value["group_order"], 6);
    assert_eq!(value["sequence_count"], 27);
    assert_eq!(value["dimension"], 1);
    assert_eq!(value["delta_bar"], serde_json::json!([[0, 1, 2]]));
    assert_eq!(value["nu"], serde_json::json!([1]));
}

#[test]
fn verify_small_blockwise_suite_passes() {
    let output = gmf(&[
        "verify", "--suite", "css", "--m", "2", "--n", "2", "--char", "sign", "--trials", "10",
        "--seed", "7",
    ]);
    assert!(output.status.success(), "{output:?}");
    let value = stdout_json(&output);
    assert_eq!(value["passed"], true);
    assert_eq!(value["reports"].as_array().map(Vec::len), Some(1));
    assert_eq!(value["reports"][0]["trials"], 10);
    assert_eq!(value["reports"][0]["failures"], serde_json::json!([]));
}

#[test]
fn verify_all_suites_pass_on_a_small_grid() {
    let output = gmf(&[
        "verify", "--suite", "all", "--m", "2", "--n", "2", "--char", "all", "--trials", "5",
        "--seed", "11", "--power", "2",
    ]);
    assert!(output.status.success(), "{output:?}");
    let value = stdout_json(&output);
    assert_eq!(value["passed"], true);
    // Two characters of S2 times seven suites.
    assert_eq!(value["reports"].as_array().map(Vec::len), Some(14));
}

#[test]
fn verify_rejects_zero_trials_with_exit_code_two() {
    let output = gmf(&[
        "verify", "--suite", "css", "--m", "2", "--n", "2", "--trials", "0",
    ]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    let value = stdout_json(&output);
    assert_eq!(value["error"], "validation");
}

#[test]
fn malformed_matrix_json_yields_format_error() {
    let dir = scratch_dir();
    let matrix = write_file(&dir, "broken.json", r#"{"rows": 2, "cols": 2, "entries": ["#);
    let output = gmf(&[
        "eval",
        "--matrix",
        matrix.to_str().unwrap(),
        "--group",
        "S2",
        "--char",
        "sign",
    ]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    let value = stdout_json(&output);
    assert_eq!(value["error"], "format");
    // serde_json reports the parse position.
    assert!(value["detail"].as_str().unwrap().contains("line"));
}

#[test]
fn unknown_flag_yields_usage_error() {
    let output = gmf(&["eval", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    let value = stdout_json(&output);
    assert_eq!(value["error"], "usage");
}

#[test]
fn missing_input_file_yields_usage_error() {
    let output = gmf(&[
        "eval",
        "--matrix",
        "/nonexistent/nowhere.json",
        "--group",
        "S2",
        "--char",
        "sign",
    ]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    assert_eq!(stdout_json(&output)["error"], "usage");
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args = [
        "verify", "--suite", "thompson", "--m", "2", "--n", "2", "--trials", "8", "--seed", "3",
    ];
    let first = gmf(&args);
    let second = gmf(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn thompson_single_shot_accepts_block_diagonal_input() {
    let dir = scratch_dir();
    let blocks = write_file(
        &dir,
        "blocks.json",
        r#"{"m": 2, "n": 1, "blocks": [
            [{"rows":1,"cols":1,"entries":[[2,0]]}, {"rows":1,"cols":1,"entries":[[0,0]]}],
            [{"rows":1,"cols":1,"entries":[[0,0]]}, {"rows":1,"cols":1,"entries":[[3,0]]}]
        ]}"#,
    );
    let output = gmf(&["thompson", "--blocks", blocks.to_str().unwrap()]);
    assert!(output.status.success(), "{output:?}");
    let value = stdout_json(&output);
    assert_eq!(value["satisfied"], true);
    assert_eq!(value["det_flat"], serde_json::json!([6.0, 0.0]));
    assert_eq!(value["det_blockwise"], serde_json::json!([6.0, 0.0]));
}

#[test]
fn out_flag_writes_the_result_file() {
    let dir = scratch_dir();
    let matrix = write_file(&dir, "I2.json", &identity_matrix_json(2));
    let out = dir.join("result.json");
    let output = gmf(&[
        "eval",
        "--matrix",
        matrix.to_str().unwrap(),
        "--group",
        "S2",
        "--char",
        "trivial",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    assert!(output.stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // Permanent of the 2x2 identity.
    assert_eq!(written["value"], serde_json::json!([1.0, 0.0]));
}

#[test]
fn size_cap_environment_variable_limits_work() {
    let dir = scratch_dir();
    let matrix = write_file(&dir, "I3.json", &identity_matrix_json(3));
    let output = Command::new(env!("CARGO_BIN_EXE_gmf"))
        .args([
            "induced",
            "--matrix",
            matrix.to_str().unwrap(),
            "--group",
            "S3",
            "--char",
            "trivial",
        ])
        .env("GMF_SIZE_CAP", "4")
        .output()
        .expect("spawn gmf");
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    assert_eq!(stdout_json(&output)["error"], "capacity");
}
