use std::process::Command;

use heatcoef_cli::run;
use serde_json::Value;

fn exec(args: &[&str]) -> heatcoef_cli::Outcome {
    run(std::iter::once("heatcoef").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let o = exec(args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn xi_table_example() {
    let v = json(&["content-coeffs", "--xi", "--max", "12"]);
    let rows = v["xi"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["index"], 2);
    assert_eq!(rows[0]["exact"]["display"], "-4/3·pi^(-1/2)");
    assert_eq!(rows[1]["exact"]["display"], "-8/15·pi^(-1/2)");
    assert_eq!(rows[5]["index"], 12);
    assert!(rows.iter().all(|r| r["provenance"] == "exact" && r["formula"].is_string()));
}

#[test]
fn oracle_fit_example() {
    let v = json(&["oracle-fit", "--domain", "interval", "--phi1", "1", "--phi2", "1", "--bc", "dirichlet"]);
    let b0 = v["coefficients"][0]["float"].as_f64().unwrap();
    assert!((b0 + 2.2568).abs() < 1e-4, "{b0}");
    assert_eq!(v["coefficients"][0]["provenance"], "fitted");
    for key in ["coefficients", "stderrs", "condition"] {
        assert!(!v["fit"][key].is_null());
    }
}

#[test]
fn oracle_fit_csv_has_tail_column() {
    let o = exec(&["oracle-fit", "--points", "5", "--format", "csv"]);
    assert_eq!(o.code, 0);
    let mut lines = o.stdout.lines();
    assert_eq!(lines.next(), Some("t,value,tail_bound"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn verify_binary_exits_zero() {
    let out = Command::new(env!("CARGO_BIN_EXE_heatcoef")).args(["verify"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exec(&["no-such-command"]).code, 2);
    assert_eq!(exec(&["trace-coeffs", "--max", "x"]).code, 2);
    let o = exec(&["trace-coeffs", "--max", "4", "--order", "11"]);
    assert_eq!(o.code, 2);
    let err: Value = serde_json::from_str(o.stderr.trim()).unwrap();
    assert_eq!(err["error"]["kind"], "Usage");
    assert_eq!(exec(&["content-coeffs", "--phi1", "1/0"]).code, 2);
}

#[test]
fn engine_errors_exit_one_with_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_heatcoef"))
        .args(["content-coeffs", "--ells", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "Admissibility");
    assert!(err["error"]["message"].is_string());
    assert_eq!(exec(&["grow-trace", "--m", "1"]).code, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["match-targets", "--targets", "3=1,4=2,5=3"];
    let a = exec(&args);
    let b = exec(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["verified"], true);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("heatcoef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# circle with constant potential\nconstant = 3/2\nmax = 4\nformat = csv\n").unwrap();
    let p = path.to_str().unwrap();
    let o = exec(&["trace-coeffs", "--config", p]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("index,exact,float,provenance,formula"));
    assert!(o.stdout.contains("\n2,3·pi^(1),"), "{}", o.stdout);

    let v = json(&["trace-coeffs", "--config", p, "--constant", "1", "--format", "json"]);
    assert_eq!(v["coefficients"][2]["exact"]["display"], "2·pi^(1)");
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 5);

    std::fs::write(&path, "unknown_key = 1\n").unwrap();
    assert_eq!(exec(&["trace-coeffs", "--config", p]).code, 2);
    assert_eq!(exec(&["trace-coeffs", "--config", "/nonexistent/cfg"]).code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn growth_and_trig_reports() {
    let v = json(&["grow-content", "--lbar-max", "5"]);
    assert_eq!(v["all_certified"], true);
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
    assert_eq!(v["entries"][0]["provenance"], "leading-only");
    let v = json(&["check-trig"]);
    for r in v["integrals"].as_array().unwrap() {
        assert!((r["value"].as_f64().unwrap() - std::f64::consts::PI.powi(2)).abs() < 1e-8);
        assert_eq!(r["ratio_to_stated"].as_f64().unwrap(), 0.25);
    }
}

#[test]
fn content_flags_and_provenance() {
    let v = json(&["content-coeffs", "--ells", "6", "--method", "leading", "--phi1", "0,0,0,0,0,0,1/720"]);
    assert_eq!(v["coefficients"][0]["provenance"], "leading-only");
    assert_eq!(v["coefficients"][0]["exact"]["display"], "-16/105·pi^(-1/2)");
    let v = json(&["content-coeffs", "--bc", "robin", "--s", "1/2", "--ells", "0,2"]);
    assert!(v["coefficients"][1]["flags"].as_array().is_some());
    assert_eq!(exec(&["content-coeffs", "--method", "images", "--e", "1"]).code, 2);
}

#[test]
fn odd_content_indices_route_to_images() {
    let v = json(&["content-coeffs", "--ells", "0,1,3"]);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c[0]["exact"]["display"], "-2·pi^(-1/2)");
    assert_eq!(c[1]["formula"], "beta_l by the method of images");
    assert_eq!(c[2]["exact"]["display"], "0");
    assert_eq!(exec(&["content-coeffs", "--e", "1", "--ells", "1"]).code, 2);
}
