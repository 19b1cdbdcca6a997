use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_oscmult"));
    c.env_remove("OSCMULT_THREADS");
    c
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_names_every_experiment() {
    let o = run(&["--list"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    for (kind, _) in oscmult::experiment::EXPERIMENTS {
        assert!(text.contains(kind), "{kind} missing");
    }
    assert!(text.contains("criterion 10"));
}

#[test]
fn missing_config_exits_2() {
    let o = run(&["run", "/nonexistent/config.json"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn class_check_example_is_a_member() {
    let o = run(&["run", config("class_check.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("\"member\""));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("experiment,n,theta,beta,s,key,quantity,value,tolerance,pass\n"));
}

#[test]
fn same_seed_same_bytes() {
    let a = run(&["cz", "--cases", "40", "--seed", "3"]);
    let b = run(&["cz", "--cases", "40", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn unknown_field_names_its_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"seed": 1, "experiment": {"kind": "lambda", "params": {"theta": 0.5, "q": 1, "s": 0.75, "s_low": 0.25, "sigma": 2}}}"#).unwrap();
    let o = run(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sigma"), "{}", stderr(&o));
}

#[test]
fn config_kind_must_match_the_subcommand() {
    let o = run(&["cz", "--config", config("lambda.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_dir_holds_three_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lam");
    let o = run(&["run", config("lambda.json").to_str().unwrap(), "--seed", "17", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["lambda.csv", "summary.json", "manifest.json"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["config"]["seed"], 17);
    assert_eq!(m["crate_version"], env!("CARGO_PKG_VERSION"));
    let s: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(s["pass"], true);
}

#[test]
fn json_summary_on_stdout() {
    let o = run(&["lambda", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["experiment"], "lambda");
}

#[test]
fn plancherel_default_family_passes() {
    let o = run(&["plancherel", "--family", "default"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn suite_subset_passes() {
    let o = run(&["paper-suite", "--only", "2,6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("criterion_02") && stderr(&o).contains("criterion_06"));
}

#[test]
fn zero_threads_is_a_config_error() {
    let o = bin().env("OSCMULT_THREADS", "0").arg("lambda").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().env("OSCMULT_THREADS", "many").arg("lambda").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wrong_expectation_exits_1() {
    // β = 1 is stable along the ladder, so asserting growth fails
    let o = run(&["weak-type", "--expect", "growing"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn out_of_regime_pair_exits_2() {
    let o = run(&["lambda", "--j", "-3", "--level", "-1", "--split", "n1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn overrides_reach_nested_multiplier() {
    let o = run(&["weak-type", "--set", "experiment.multiplier.beta=-0.5", "--set", r#"experiment.expect="growing""#]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
