use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhermite"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn family_tables() {
    let o = run(&["family", "--name", "hermite", "--n", "2", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(-1 + s^4) + 4*x^2");
    assert_eq!(stdout(&run(&["family", "--name", "psi", "--n", "0"])).trim(), "1");
    assert_eq!(stdout(&run(&["family", "--name", "h", "--n", "1"])).trim(), "x");
}

#[test]
fn family_json_is_deterministic() {
    let args = ["family", "--name", "hermite", "--n", "2", "--format", "json"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    assert_eq!(
        a.trim(),
        r#"{"family":"hermite","n":2,"coeffs_x":["(-1 + s^4)/(1)","(0)/(1)","(4)/(1)"]}"#
    );
}

#[test]
fn unknown_family_is_a_usage_error() {
    let o = run(&["family", "--name", "laguerre", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_paths() {
    assert_eq!(
        stdout(&run(&[
            "eval", "--name", "hermite", "--n", "2", "--q", "0.25", "--x", "1"
        ]))
        .trim(),
        "3.25"
    );
    assert_eq!(
        stdout(&run(&["eval", "--name", "psi", "--n", "1", "--s", "1/2", "--x", "1/2"])).trim(),
        "1"
    );
    assert_eq!(
        stdout(&run(&[
            "eval", "--name", "hermite", "--n", "0", "--q", "0.7", "--x", "-3"
        ]))
        .trim(),
        "1"
    );
    let bad = run(&["eval", "--name", "hermite", "--n", "2", "--s", "sqrt(2)/2", "--x", "1"]);
    assert_eq!(bad.status.code(), Some(2));
    let both = run(&[
        "eval", "--name", "psi", "--n", "1", "--s", "1/2", "--q", "0.3", "--x", "1",
    ]);
    assert_eq!(both.status.code(), Some(2));
    let out_of_range = run(&["eval", "--name", "psi", "--n", "1", "--q", "1.5", "--x", "1"]);
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn eval_csv() {
    let o = run(&[
        "eval", "--name", "hermite", "--n", "3", "--s", "1/2", "--x", "0,1/2", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "n,q,x,value\n3,1/16,0,0\n3,1/16,1/2,-239/256\n");
}

#[test]
fn convert_rows() {
    let o = run(&[
        "convert",
        "--direction",
        "psi-to-hermite",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"direction":"psi-to-hermite","n":2,"weights":[{"k":0,"weight":"(1)/(1)"},{"k":1,"weight":"(s^-4 - 1)/(1)"}]}"#
    );
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "dq-psi", "--max-n", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "suite=dq-psi cases=6 failures=0");
    let o = run(&["verify", "--suite", "inverse", "--max-n", "8"]);
    assert!(o.status.success());
    let o = run(&["verify", "--suite", "genfun", "--t-order", "8"]);
    assert!(o.status.success());
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn characterize_runs() {
    let dir = std::env::temp_dir().join(format!("qhermite-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["characterize", "--max-n", "10", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["outcome"], "ForcedHermite");

    let o = run(&["characterize", "--max-n", "10", "--a1", "1", "--a2", "0", "--s", "1/2"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let case2 = &report["parts"][1];
    assert_eq!(case2["outcome"], "ContradictionWitness");
    assert!(case2["witness"]["residual"].as_str().unwrap() != "0");

    assert_eq!(run(&["characterize", "--max-n", "3"]).status.code(), Some(2));
    assert_eq!(
        run(&["characterize", "--a1", "0", "--a2", "0", "--s", "1/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["characterize", "--a1", "1"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
