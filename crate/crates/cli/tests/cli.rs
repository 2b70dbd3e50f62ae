use std::path::PathBuf;
use std::process::{Command, Output};

fn mellint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mellint"))
        .args(args)
        .env_remove("MELLINT_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mellint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn list_prints_every_identity() {
    let out = mellint(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 15);
    assert!(text.contains("I1-ext"));
    assert!(text.lines().any(|l| l.starts_with("I6 ") && l.contains("b ≥ 0, c ≥ 0")));
    assert!(text.lines().any(|l| l.starts_with("I1 ") && l.contains("a ∈ [0, 1]")));
}

#[test]
fn verify_passes_with_exit_zero() {
    let out = mellint(&["verify", "I8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS I8"));
}

#[test]
fn verify_with_parameters_as_json() {
    let out = mellint(&["verify", "I6", "--param", "b=1", "--param", "c=1/2", "--digits", "30", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &value[0];
    assert_eq!(row["id"], "I6");
    assert_eq!(row["params"]["b"], "1");
    assert_eq!(row["params"]["c"], "0.5");
    assert_eq!(row["digits"], "30");
    assert_eq!(row["passed"], true);
}

#[test]
fn failing_identity_exits_two() {
    // the partial sum cap leaves a tail of order e^-4
    let out = mellint(&["verify", "I11", "--param", "a=0.99999", "--format", "csv", "--digits", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).lines().nth(1).unwrap().contains(",false,"));
}

#[test]
fn domain_errors_exit_three() {
    assert_eq!(mellint(&["verify", "I1", "--param", "a=2"]).status.code(), Some(3));
    assert_eq!(mellint(&["verify", "I1-ext", "--param", "a=1"]).status.code(), Some(3));
    assert_eq!(mellint(&["verify", "I99"]).status.code(), Some(3));
    assert_eq!(mellint(&["verify", "I8", "--digits", "5"]).status.code(), Some(3));
    assert_eq!(mellint(&["verify", "I1", "--param", "a"]).status.code(), Some(3));
    assert_eq!(mellint(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn non_convergence_exits_three() {
    let out = mellint(&["verify", "I6", "--param", "b=0.5", "--param", "c=2", "--level-cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("converge"));
}

#[test]
fn sweep_writes_csv() {
    let path = scratch("sweep.csv");
    let out = mellint(&[
        "sweep", "I6", "--param", "c", "--range", "0.5:2:4", "--fixed", "b=1", "--digits", "30", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("I6,b=1;c=0.5,"));
    assert!(lines[4].starts_with("I6,b=1;c=2,"));
}

#[test]
fn sweep_json_by_extension() {
    let path = scratch("sweep.json");
    let out = mellint(&["sweep", "I1", "--param", "a", "--range", "0:0.9:10", "--digits", "30", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 10);
}

#[test]
fn degenerate_sweep_rejected() {
    assert_eq!(mellint(&["sweep", "I1", "--param", "a", "--range", "0:0:2"]).status.code(), Some(3));
    assert_eq!(mellint(&["sweep", "I1", "--param", "a", "--range", "0:1"]).status.code(), Some(3));
}

#[test]
fn config_file_from_environment_and_flag_precedence() {
    let path = scratch("run.conf");
    std::fs::write(&path, "# test\ndigits = 35\nlevel_cap = 13\n").unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "I8", "--format", "json"];
        args.extend_from_slice(extra);
        let out = Command::new(env!("CARGO_BIN_EXE_mellint")).args(&args).env("MELLINT_CONFIG", &path).output().unwrap();
        assert!(out.status.success());
        let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        value[0]["digits"].as_str().unwrap().to_string()
    };
    assert_eq!(run(&[]), "35");
    assert_eq!(run(&["--digits", "40"]), "40");

    let explicit = scratch("explicit.conf");
    std::fs::write(&explicit, "digits = 45\n").unwrap();
    assert_eq!(run(&["--config", explicit.to_str().unwrap()]), "45");

    let broken = scratch("broken.conf");
    std::fs::write(&broken, "precision = 9\n").unwrap();
    assert_eq!(mellint(&["list", "--config", broken.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn quick_selftest_passes() {
    let out = mellint(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("selftest at 30 digits"));
    assert!(!text.contains("FAIL"));
}
