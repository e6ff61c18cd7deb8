//! End-to-end checks of the command-line surface: JSON formats and exit
//! codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lambda-cm")
}

struct Workdir {
    dir: PathBuf,
}

impl Workdir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("lambda-cm-cli-{}-{tag}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Workdir { dir }
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_seed(args: &[&str], seed: &str) -> Output {
    Command::new(bin())
        .args(args)
        .env("SEED", seed)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

const TRIANGLE: &str = r#"{"n":[3],"a":[2],"d":2}"#;
const WORKED: &str = r#"{"n":[4,3,3],"a":[2,2,1],"d":4}"#;

#[test]
fn hvector_of_triangle() {
    let w = Workdir::new("hvector");
    let inst = w.file("tri.json", TRIANGLE);
    let out = run(&["hvector", "--instance", &inst]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), serde_json::json!([1, 1, 1]));
    let out = run(&["fvector", "--instance", &inst]);
    assert_eq!(stdout_json(&out), serde_json::json!([1, 3, 3]));
}

#[test]
fn lambda_lists_facets_in_shelling_order() {
    let w = Workdir::new("lambda");
    let inst = w.file("tri.json", TRIANGLE);
    let out = run(&["lambda", "--instance", &inst]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({ "facets": [[[1,1],[1,2]], [[1,1],[1,3]], [[1,2],[1,3]]] })
    );
}

#[test]
fn shelling_with_verification() {
    let w = Workdir::new("shelling");
    let inst = w.file("tri.json", TRIANGLE);
    let out = run(&["shelling", "--instance", &inst, "--verify"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["h"], serde_json::json!([1, 1, 1]));
    assert_eq!(json["verified"], serde_json::json!(true));
    assert_eq!(json["restrictions"][0], serde_json::json!([]));
}

#[test]
fn phi_and_psi_round_trip_the_worked_example() {
    let w = Workdir::new("phipsi");
    let inst = w.file("worked.json", WORKED);
    let out = run(&[
        "phi",
        "--instance",
        &inst,
        "--facet",
        "[[1,1],[1,4],[2,2],[3,2]]",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({"exp": [[1],[0,1],[0],[1,0]]})
    );

    let out = run(&[
        "psi",
        "--instance",
        &inst,
        "--monomial",
        r#"{"exp":[[1],[0,1],[0],[1,0]]}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        serde_json::json!([[1, 1], [1, 4], [2, 2], [3, 2]])
    );

    let out = run(&[
        "psi",
        "--instance",
        &inst,
        "--monomial",
        r#"{"exp":[[0],[0,1],[0],[1,0]]}"#,
    ]);
    assert_eq!(
        stdout_json(&out),
        serde_json::json!([[1, 1], [1, 4], [2, 1], [3, 2]])
    );
}

#[test]
fn compress_and_check() {
    let w = Workdir::new("compress");
    // n=(3), a=(2), d=1: variables w (block 0) and x (block 1).
    let inst = w.file("inst.json", r#"{"n":[3],"a":[2],"d":1}"#);
    let monomials = w.file(
        "m.json",
        r#"{"monomials":[{"exp":[[0],[0]]},{"exp":[[0],[1]]}]}"#,
    );
    let out = run(&["compress", "--instance", &inst, "--monomials", &monomials]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({"monomials": [{"exp":[[0],[0]]}, {"exp":[[1],[0]]}]})
    );
    // The input is not (0)-compressed: --check reports false with exit 1.
    let out = run(&[
        "compress",
        "--instance",
        &inst,
        "--monomials",
        &monomials,
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({"is_0_compressed": false})
    );
    // A non-multicomplex is a usage error.
    let bad = w.file("bad.json", r#"{"monomials":[{"exp":[[0],[1]]}]}"#);
    let out = run(&["compress", "--instance", &inst, "--monomials", &bad]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gamma_of_trivial_multicomplex() {
    let w = Workdir::new("gamma");
    let inst = w.file("tri.json", TRIANGLE);
    let monomials = w.file("m.json", r#"{"monomials":[{"exp":[[],[0]]}]}"#);
    let out = run(&["gamma", "--instance", &inst, "--monomials", &monomials]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({"facets": [[[1,1],[1,2]]]})
    );
}

#[test]
fn check_cm_pass_and_fail() {
    let w = Workdir::new("checkcm");
    let good = w.file(
        "good.json",
        r#"{"facets":[[[1,1],[1,2]],[[1,1],[1,3]],[[1,2],[1,3]]]}"#,
    );
    let out = run(&["check-cm", "--facets", &good]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), serde_json::json!({"cm": true}));

    let bad = w.file("bad.json", r#"{"facets":[[[1,1],[1,2]],[[1,3],[1,4]]]}"#);
    let out = run(&["check-cm", "--facets", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(json["cm"], serde_json::json!(false));
    assert!(json["witness"].is_object());
}

#[test]
fn check_lsop_triangle() {
    let w = Workdir::new("lsop");
    let inst = w.file("tri.json", TRIANGLE);
    let out = run(&[
        "check-lsop",
        "--instance",
        &inst,
        "--seeds",
        "2",
        "--range",
        "1000",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json = stdout_json(&out);
    assert_eq!(json["passed"], serde_json::json!(true));
    assert_eq!(json["results"].as_array().unwrap().len(), 2);
    // Scientific notation is accepted for the range.
    let out = run(&[
        "check-lsop",
        "--instance",
        &inst,
        "--seeds",
        "1",
        "--range",
        "1e6",
    ]);
    assert!(out.status.success());
}

#[test]
fn verify_bijection_subcommand() {
    let w = Workdir::new("vbij");
    let inst = w.file("tri.json", TRIANGLE);
    let out = run(&["verify-bijection", "--instance", &inst, "--budget", "10"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["failures"], serde_json::json!([]));
    // Refusal when over budget.
    let big = w.file("worked.json", WORKED);
    let out = run(&["verify-bijection", "--instance", &big, "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_ok_and_is_seed_deterministic() {
    let w = Workdir::new("verify");
    let inst = w.file("inst.json", r#"{"n":[2,2],"a":[1,1],"d":2}"#);
    let out = run(&["verify", "--instance", &inst]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json = stdout_json(&out);
    assert_eq!(json["status"], serde_json::json!("ok"));
    assert_eq!(json["directions"].as_array().unwrap().len(), 4);

    // The worked instance runs the sampled path; equal seeds give equal
    // reports apart from timings.
    let big = w.file("worked.json", WORKED);
    let strip = |mut v: serde_json::Value| {
        for d in v["directions"].as_array_mut().unwrap() {
            d.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let a = run_with_seed(&["verify", "--instance", &big, "--samples", "40"], "7");
    let b = run_with_seed(&["verify", "--instance", &big, "--samples", "40"], "7");
    assert!(a.status.success());
    assert_eq!(strip(stdout_json(&a)), strip(stdout_json(&b)));
    assert_eq!(stdout_json(&a)["seed"], serde_json::json!(7));
}

#[test]
fn usage_errors_exit_two() {
    let w = Workdir::new("usage");
    // Unknown flag.
    let out = run(&["hvector", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown subcommand.
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // Malformed JSON.
    let bad = w.file("bad.json", "{not json");
    let out = run(&["hvector", "--instance", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
    // Invalid instance values.
    let invalid = w.file("invalid.json", r#"{"n":[1],"a":[2],"d":1}"#);
    let out = run(&["hvector", "--instance", &invalid]);
    assert_eq!(out.status.code(), Some(2));
    // Missing file.
    let out = run(&["hvector", "--instance", "/nonexistent/inst.json"]);
    assert_eq!(out.status.code(), Some(2));
}
