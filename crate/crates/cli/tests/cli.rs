use std::process::{Command, Output};

fn sqk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqk")).args(args).env_remove("SQK_CONFIG").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sqk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&sqk(&["verify", "nowhere"])), 2);
    assert_eq!(code(&sqk(&["edm", "--q", "8", "--r", "0"])), 2);
    assert_eq!(code(&sqk(&["edm", "--r", "1"])), 2);
    assert_eq!(code(&sqk(&["tables", "table3", "--r", "0"])), 2);
    assert_eq!(code(&sqk(&["simulate", "magnetic", "--dt", "0"])), 2);
    assert_eq!(code(&sqk(&["simulate", "magnetic", "--r", "1", "--H", "5"])), 2);
    assert_eq!(code(&sqk(&["verify", "geometry", "--tol-fd", "-1"])), 2);
    assert_eq!(code(&sqk(&["--help"])), 0);
}

#[test]
fn io_errors_exit_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_sqk"))
        .args(["verify", "geometry", "--r", "0", "--H", "1"])
        .env("SQK_CONFIG", tmp("missing.conf"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(code(&sqk(&["edm", "--q", "2", "--out", "/nonexistent/dir/cert.json"])), 3);
}

#[test]
fn config_file_then_flags() {
    let path = tmp("run.conf");
    std::fs::write(&path, "seed = 9\npoints = 5\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sqk"))
        .args(["verify", "geometry", "--r", "0", "--H", "1", "--seed", "11"])
        .env("SQK_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["config"]["points"], 5);
}

#[test]
fn reports_are_deterministic_up_to_timestamp() {
    let strip = |o: Output| -> String {
        String::from_utf8(o.stdout).unwrap().lines().filter(|l| !l.contains("\"timestamp\"")).collect::<Vec<_>>().join("\n")
    };
    let args = ["verify", "sqk", "--r", "0", "--H", "13", "--seed", "5"];
    let (a, b) = (sqk(&args), sqk(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn chart_invalid_space_skips_with_reason() {
    let o = sqk(&["verify", "geometry", "--r", "1", "--H", "5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    for c in checks {
        if c["id"] == "geometry.scalar" {
            assert_eq!(c["status"], "pass");
        } else {
            assert_eq!(c["status"], "skip");
            assert_eq!(c["reason"], "chart-invalid");
        }
    }
}

#[test]
fn edm_certificates() {
    let o = sqk(&["edm", "--q", "2", "--r", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classification"], "SL2-type");
    assert!((v["H"].as_str().unwrap().parse::<f64>().unwrap() + 0.6).abs() < 1e-12);
    assert!((v["Lambda"].as_str().unwrap().parse::<f64>().unwrap() + 1.0).abs() < 1e-12);

    let v: serde_json::Value = serde_json::from_slice(&sqk(&["edm", "--q", "12", "--r", "1"]).stdout).unwrap();
    assert_eq!(v["classification"], "S³-type");
    assert_eq!(v["chart_based"], false);
    assert!((v["H"].as_str().unwrap().parse::<f64>().unwrap() - 6.2).abs() < 1e-12);
}

#[test]
fn reeb_orbit_csv() {
    let out = tmp("reeb.csv");
    let o = sqk(&["simulate", "dirac-flow", "--C1", "1,0", "--C2", "1,0", "--t-max", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<f64>> = csv.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 1001);
    for r in &rows {
        assert_eq!((r[1], r[2]), (rows[0][1], rows[0][2]));
    }
    assert!(String::from_utf8(o.stdout).unwrap().contains("speed2_drift="));
}

#[test]
fn domain_exit_writes_partial_csv() {
    let out = tmp("exit.csv");
    // a null Lorentzian orbit runs off to x1 = ∞ near t = 204
    let args = ["simulate", "magnetic", "--r", "1", "--H", "0", "--p", "0.3,0,0", "--C1", "1,0", "--C2", "0,1"];
    let o = sqk(&[&args[..], &["--t-max", "300", "--dt", "0.01", "--out", out.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 1);
    let rows = std::fs::read_to_string(&out).unwrap().lines().count() - 1;
    assert!(rows > 20_000 && rows < 30_001, "{rows}");
    assert!(String::from_utf8(o.stdout).unwrap().contains("domain_exit=t=204"));
}

#[test]
fn table2_text_and_json() {
    let out = tmp("t2.json");
    let o = sqk(&["tables", "table2", "--r", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("H=13"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["tables"][0]["cells"].as_array().unwrap().len(), 9);
}

#[test]
fn coarse_table3_grid() {
    let o = sqk(&["tables", "table3", "--grid", "-5:6:0.5"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("(2.5, 3)"));
}
