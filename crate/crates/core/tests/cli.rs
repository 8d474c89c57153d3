use std::path::Path;
use std::process::{Command, Output};

use casimir_core::cli::{exit, POLICY_ENV};
use serde_json::Value;

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .env_remove(POLICY_ENV)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn record(v: &Value, quantity: &str) -> f64 {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["quantity"] == quantity)
        .unwrap()["value"]
        .as_f64()
        .unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn eval_examples() {
    let out = casimir(&["eval", "fermion", "--a", "1", "--b", "1", "--c", "1", "--T", "0", "--force", "a"]);
    assert_eq!(code(&out), exit::OK);
    let v = json(&out);
    assert!((record(&v, "force_a") + 0.0163).abs() < 5e-4);
    assert_eq!(v["records"][0]["units"], "natural units, hbar=c=k_B=1");

    let v = json(&casimir(&["eval", "em", "--a", "1", "--b", "1", "--c", "1", "--T", "0"]));
    assert!((record(&v, "energy") - 0.0917).abs() < 5e-4);

    let v = json(&casimir(&["eval", "fermion", "--a", "1", "--b", "1", "--c", "1", "--T", "50"]));
    assert!(record(&v, "energy").abs() < 1e-6);

    let v = json(&casimir(&["eval", "fermion", "--limit", "plate", "--b", "1"]));
    assert_eq!(v["records"][0]["normalization"], "per_unit_area");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "fermion", "--a", "-1", "--b", "1", "--c", "1"][..],
        &["eval", "fermion", "--a", "1", "--b", "1"],
        &["eval", "boson", "--a", "1", "--b", "1", "--c", "1"],
        &["eval", "em", "--a", "1", "--b", "1", "--c", "1", "--force", "a"],
        &["verify", "--identity", "four_sum"],
        &["sweep", "--fig", "t0-regions", "--n", "1"],
        &["nonsense"],
    ] {
        let out = casimir(args);
        assert_eq!(code(&out), exit::USAGE, "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
    assert_eq!(code(&casimir(&["--help"])), exit::OK);
}

#[test]
fn non_convergence_names_the_series() {
    let out = casimir(&["eval", "fermion", "--a", "1", "--b", "1", "--c", "1", "--T", "0.05", "--max-index", "8"]);
    assert_eq!(code(&out), exit::NON_CONVERGENCE);
    assert!(stderr(&out).contains("series W3"), "{}", stderr(&out));
}

#[test]
fn verify_examples_and_failure() {
    let out = casimir(&["verify", "--identity", "schlomilch", "--alpha", "3.14159", "--json"]);
    assert_eq!(code(&out), exit::OK);
    // JSON lines: the manifest, then one report per identity
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["command"], "verify");
    let report = &lines[1];
    assert!(report["digits_agreed"].as_i64().unwrap() >= 12);

    let out = casimir(&["verify", "--identity", "three_partition", "--a", "1", "--b", "1", "--c", "1", "--alpha", "1", "--tol", "1e-3"]);
    assert_eq!(code(&out), exit::VERIFY_FAILED);
}

#[test]
fn critical_examples_and_bracket_failure() {
    let out = casimir(&["critical", "--mode", "aspect-t0"]);
    assert_eq!(code(&out), exit::OK);
    let ratio = json(&out)["result"]["ratio"].as_f64().unwrap();
    assert!((ratio - 1.21).abs() <= 0.02);

    let out = casimir(&["critical", "--mode", "c-cr-vs-b", "--T", "300", "--values", "1"]);
    assert_eq!(code(&out), exit::BRACKET);
    assert!(stderr(&out).contains("sign change"));
}

#[test]
fn sweep_labels_the_cube() {
    let out = casimir(&["sweep", "--fig", "t0-regions", "--amax", "3", "--cmax", "3", "--n", "5"]);
    assert_eq!(code(&out), exit::OK);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let manifest: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_eq!(manifest["command"], "sweep");
    assert_eq!(lines.next().unwrap(), "a,b,c,T,f_a,f_b,f_c,sign_a,sign_b,sign_c,region");
    let cube = lines
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|f| f[..3].iter().all(|x| x.parse::<f64>().unwrap() == 1.0))
        .unwrap();
    assert_eq!(cube[10], "III");
}

#[test]
fn io_errors_name_the_path() {
    let out = casimir(&["sweep", "--fig", "t0-regions", "--n", "3", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(code(&out), exit::IO);
    assert!(stderr(&out).contains("/nonexistent/dir/x.csv"));
    let out = casimir(&["replay", "/nonexistent/run.json"]);
    assert_eq!(code(&out), exit::IO);
}

fn replay_matches(args: &[&str], file: &Path) {
    let path = file.to_str().unwrap();
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path]);
    assert_eq!(code(&casimir(&with_out)), exit::OK);
    let first = std::fs::read_to_string(file).unwrap();
    let replayed = casimir(&["replay", path]);
    assert_eq!(code(&replayed), exit::OK, "{}", stderr(&replayed));
    let second = String::from_utf8(replayed.stdout).unwrap();
    // everything but the manifest's wall time must agree byte for byte
    let body = |s: &str| -> String {
        if s.starts_with('#') {
            s.lines().skip(1).collect::<Vec<_>>().join("\n")
        } else {
            let mut v: Value = serde_json::from_str(s).unwrap();
            v.as_object_mut().unwrap().remove("manifest");
            v.to_string()
        }
    };
    assert_eq!(body(&first), body(&second));
}

#[test]
fn replay_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    replay_matches(
        &["sweep", "--fig", "regions", "--T", "0.7", "--n", "4"],
        &dir.path().join("regions.csv"),
    );
    replay_matches(
        &["sweep", "--fig", "plate-profile", "--T", "1", "--format", "json"],
        &dir.path().join("plate.json"),
    );
    replay_matches(
        &["eval", "fermion", "--a", "1.3", "--b", "0.9", "--c", "2", "--T", "0.4", "--force", "a,b,c"],
        &dir.path().join("eval.json"),
    );
    replay_matches(&["critical", "--mode", "c-cr-vs-t", "--b", "0.5"], &dir.path().join("crit.json"));
}

#[test]
fn numbers_round_trip() {
    let out = casimir(&["eval", "fermion", "--a", "1.3", "--b", "0.9", "--c", "2", "--T", "0.4"]);
    let v = record(&json(&out), "energy");
    let direct = casimir_core::fermion::energy_finite_t(
        &casimir_core::fermion::BoxGeometry::new(1.3, 0.9, 2.0).unwrap(),
        &casimir_core::fermion::ThermalState::new(0.4).unwrap(),
        &casimir_core::series::PrecisionPolicy::default(),
    )
    .unwrap()
    .value;
    assert_eq!(v.to_bits(), direct.to_bits());
}

#[test]
fn policy_file_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("policy.json");
    std::fs::write(
        &path,
        r#"{"rel_tol":1e-6,"abs_floor":1e-300,"max_index":500,"error_mode":"first_omitted_term"}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(["eval", "fermion", "--a", "1", "--b", "1", "--c", "1"])
        .env(POLICY_ENV, &path)
        .output()
        .unwrap();
    assert_eq!(code(&out), exit::OK, "{}", stderr(&out));
    let policy = &json(&out)["manifest"]["policy"];
    assert_eq!(policy["rel_tol"], 1e-6);
    assert_eq!(policy["max_index"], 500);
    assert_eq!(policy["error_mode"], "first_omitted_term");

    std::fs::write(&path, "not json").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(["eval", "fermion", "--a", "1", "--b", "1", "--c", "1"])
        .env(POLICY_ENV, &path)
        .output()
        .unwrap();
    assert_ne!(code(&out), exit::OK);
    assert!(stderr(&out).contains("policy.json"));
}

#[test]
fn in_process_runner_matches_the_binary() {
    let args = ["eval", "fermion", "--a", "2", "--b", "1", "--c", "1", "--force", "a"];
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    assert_eq!(casimir_core::cli::run(&argv, &mut o, &mut e), exit::OK);
    let v: Value = serde_json::from_slice(&o).unwrap();
    assert_eq!(v["records"], json(&casimir(&args))["records"]);
}
