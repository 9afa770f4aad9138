use std::path::PathBuf;
use std::process::{Command, Output};

fn klyachko(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klyachko"))
        .args(args)
        .env_remove("KLYACHKO_SEED")
        .output()
        .expect("binary runs")
}

fn temp_json(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("klyachko-cli-{}-{name}.json", std::process::id()))
}

#[test]
fn show_element_matches_golden() {
    let out = klyachko(&["show", "element", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), include_str!("golden/element_n3.txt"));
}

#[test]
fn show_partner_and_gmaj() {
    let out = klyachko(&["show", "partner", "--n", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let perms: Vec<&str> = text.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(perms, ["123", "231", "312"]);

    let out = klyachko(&["show", "gmaj", "--n", "3", "--sigma", "132"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "132: q1*q3 / (1 - q1)(1 - q1*q3)");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "lie", "--n", "3"][..],
        &["verify", "dynkin", "--n", "3"],
        &["verify", "ideal", "--n", "3"],
        &["verify", "pare", "--n", "4"],
        &["verify", "ppartition", "--n", "3", "--degree", "5"],
        &["verify", "shuffle-identity", "--n", "3"],
        &["verify", "theta", "--max-size", "3", "--degree", "4"],
        &["verify", "cyclotomic", "--n", "4"],
        &["verify", "lemma", "--n", "3"],
        &["verify", "idempotent", "--n", "5", "--randomized", "--points", "20", "--seed", "7"],
    ] {
        let out = klyachko(args);
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{args:?}\n{text}");
        assert!(text.trim_end().ends_with("verdict: pass"), "{args:?}\n{text}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "nonsense"][..],
        &["verify", "lie", "--n", "x"],
        &["verify", "pare", "--randomized"],
        &["verify", "lie", "--n", "1"],
        &["show", "gmaj", "--n", "3", "--sigma", "12"],
        &["frobnicate"],
    ] {
        assert_eq!(klyachko(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_report_schema() {
    let path = temp_json("schema");
    let out = klyachko(&["verify", "lie", "--n", "4", "--randomized", "--points", "2", "--seed", "3", "--json"]
        .iter()
        .copied()
        .chain([path.to_str().unwrap()])
        .collect::<Vec<_>>());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["checks_run", "elapsed_ms", "failures", "mode", "params", "suite", "verdict"]);
    assert_eq!(v["suite"], "lie");
    assert_eq!(v["params"]["n"], "4");
    assert_eq!(v["mode"], serde_json::json!({"kind": "randomized", "points": 2, "seed": 3}));
    assert_eq!(v["checks_run"], 2 * 72);
    assert_eq!(v["failures"], serde_json::json!([]));
    assert!(v["elapsed_ms"].is_null());
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn timing_flag_fills_elapsed() {
    let path = temp_json("timing");
    let out = klyachko(&["verify", "pare", "--n", "3", "--timing", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn seed_falls_back_to_environment() {
    let (a, b) = (temp_json("env"), temp_json("flag"));
    let base = ["verify", "ideal", "--n", "4", "--randomized", "--points", "2", "--json"];
    let status = Command::new(env!("CARGO_BIN_EXE_klyachko"))
        .args(base)
        .arg(&a)
        .env("KLYACHKO_SEED", "41")
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let out = klyachko(&base.iter().copied().chain([b.to_str().unwrap(), "--seed", "41"]).collect::<Vec<_>>());
    assert!(out.status.success());
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = (std::fs::remove_file(&a), std::fs::remove_file(&b));
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["mode"]["seed"], 41);
}

#[test]
fn default_mode_depends_on_n() {
    let out = klyachko(&["verify", "lie", "--n", "4"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("mode: symbolic"));
    let out = klyachko(&["verify", "lie", "--n", "5", "--points", "1"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("mode: randomized(points=1, seed=0)"));
}
