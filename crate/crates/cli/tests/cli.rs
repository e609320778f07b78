use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ffwb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn ffwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffwb")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn compute_pi() {
    let cfg = scratch("pi.toml", "q = 3\n");
    let out = ffwb(&["compute", "pi", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"]["valuation"], -3);
}

#[test]
fn compute_omega_shape() {
    let cfg = scratch("omega.toml", "q = 3\nnt = 8\n");
    let out = ffwb(&["compute", "omega", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"]["coeffs"].as_array().unwrap().len(), 8);
}

#[test]
fn reducible_prime_is_a_config_error() {
    let cfg = scratch("red.toml", "q = 3\nprimes = [[2, 0, 1]]\n");
    let out = ffwb(&["compute", "gauss-sum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reducible"));
}

#[test]
fn gauss_sum_and_lvalue() {
    let cfg = scratch("gs.toml", "q = 3\nprimes = [[1, 0, 1]]\nlvalue_n = 3\n");
    let out = ffwb(&["compute", "gauss-sum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"].as_array().unwrap().len(), 2);
    let out = ffwb(&["compute", "lvalue", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_carlitz_passes_and_is_deterministic() {
    let cfg = scratch("carlitz.toml", "q = 2\n");
    let a = scratch("a.json", "");
    let b = scratch("b.json", "");
    for out in [&a, &b] {
        let r = ffwb(&["verify", "carlitz", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn verify_low_precision_reports_errors() {
    let cfg = scratch("low.toml", "q = 3\nprec = 32\nprimes = [[2, 1]]\n");
    let out = scratch("low.json", "");
    let r = ffwb(&["verify", "all", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|x| x["status"] == "ERROR" && x["detail"].as_str().unwrap().contains("insufficient precision")));
}

#[test]
fn verify_diagram_with_plot() {
    let cfg = scratch("diagram.toml", "q = 3\nprimes = [[1, 0, 1]]\n");
    let out = scratch("diagram.json", "");
    let plot = scratch("residuals.tsv", "");
    let r = ffwb(&[
        "verify",
        "diagram",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert!(report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["name"].as_str().unwrap().ends_with("values diagram") && x["status"] == "PASS"));
    let tsv = std::fs::read_to_string(&plot).unwrap();
    assert!(tsv.starts_with("N\t"));
    assert_eq!(tsv.lines().count(), 7);
}

#[test]
fn bad_suite_and_missing_file() {
    let cfg = scratch("ok.toml", "q = 2\n");
    assert_eq!(ffwb(&["verify", "nope", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(ffwb(&["compute", "pi", "--config", "/nonexistent.toml"]).status.code(), Some(2));
}
