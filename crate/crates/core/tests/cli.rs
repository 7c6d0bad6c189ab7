use std::process::Command;

use serde_json::Value;

fn keykernels(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_keykernels"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn pretty(args: &[&str]) -> String {
    let mut all = args.to_vec();
    all.extend(["--format", "pretty"]);
    let (code, stdout, stderr) = keykernels(&all);
    assert_eq!(code, 0, "{stderr}");
    stdout.trim_end().to_string()
}

#[test]
fn key_examples() {
    assert_eq!(pretty(&["key", "A:0,1"]), "x1 + x2");
    assert_eq!(pretty(&["key", "A:0,1:hat"]), "x2");
    assert_eq!(pretty(&["key", "A:2,1"]), "x1^2*x2");
}

#[test]
fn key_json_format() {
    let (code, stdout, _) = keykernels(&["key", "A:0,1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["x1", "x2"]));
    assert_eq!(v["unit"], 1);
    assert_eq!(
        v["terms"],
        serde_json::json!([[[0, 1], "1/1"], [[1, 0], "1/1"]])
    );
}

#[test]
fn character_examples() {
    assert_eq!(
        pretty(&["character", "1,0", "--type", "A", "--n", "2"]),
        "x1 + x2"
    );
    assert_eq!(
        pretty(&["character", "1", "--type", "C", "--n", "1"]),
        "x1 + x1^-1"
    );
    assert_eq!(
        pretty(&["character", "1", "--type", "B", "--n", "1"]),
        "x1 + 1 + x1^-1"
    );
    assert_eq!(
        keykernels(&["character", "1,1,1", "--type", "A", "--n", "2"]).0,
        2
    );
}

#[test]
fn verify_examples_pass() {
    for args in [
        &[
            "verify", "theorem6", "--type", "A", "--n", "2", "--maxdeg", "4",
        ][..],
        &[
            "verify",
            "theorem15",
            "--type",
            "C",
            "--n",
            "2",
            "--bound",
            "3",
        ][..],
        &["verify", "braid", "--type", "D", "--n", "3"][..],
    ] {
        let (code, stdout, stderr) = keykernels(args);
        assert_eq!(code, 0, "{args:?}: {stdout}{stderr}");
        let report: Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(report["status"], "pass");
        assert!(report["counterexample"].is_null());
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(keykernels(&["verify", "theorem99"]).0, 2);
    assert_eq!(keykernels(&["key", "A:1,x"]).0, 2);
    assert_eq!(keykernels(&["gram", "--n", "0"]).0, 2);
    assert_eq!(keykernels(&["gram", "--beta", "seven"]).0, 2);
}

#[test]
fn output_is_reproducible() {
    let args = [
        "verify", "theorem8", "--type", "B", "--n", "2", "--trials", "5", "--seed", "7",
    ];
    assert_eq!(keykernels(&args), keykernels(&args));
    let args = ["gram", "--type", "BC", "--n", "2", "--bound", "1"];
    assert_eq!(keykernels(&args), keykernels(&args));
}

#[test]
fn scalar_and_gram() {
    assert_eq!(
        pretty(&["scalar", "--type", "C", "C:1,0", "C:-1,0:hat"]),
        "1/1"
    );
    assert_eq!(
        pretty(&["scalar", "--type", "C", "C:1,0", "C:0,-1:hat"]),
        "0/1"
    );
    let (code, stdout, _) = keykernels(&["gram", "--type", "A", "--n", "2", "--bound", "1"]);
    assert_eq!(code, 0);
    let gram: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(gram["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn beta_specialization() {
    let symbolic = pretty(&["kernel", "--type", "BC", "--n", "1", "--maxdeg", "1"]);
    assert!(symbolic.contains("beta"), "{symbolic}");
    let zero = pretty(&[
        "kernel", "--type", "BC", "--n", "1", "--maxdeg", "1", "--beta", "0",
    ]);
    assert!(!zero.contains("beta"), "{zero}");
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("keykernels-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("key.json");
    let (code, stdout, _) = keykernels(&["key", "C:1,-1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let poly: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(poly["terms"].is_array());
    let (code, stdout, _) = keykernels(&[
        "scalar",
        "--type",
        "C",
        path.to_str().unwrap(),
        "C:-1,1:hat",
        "--format",
        "pretty",
    ]);
    assert_eq!((code, stdout.trim()), (0, "1/1"));
    std::fs::remove_dir_all(&dir).unwrap();
}
