use std::path::Path;
use std::process::{Command, Output};

fn raysearch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raysearch")).args(args).output().expect("binary runs")
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn ratio_curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let o = raysearch(&["--seed", "7", "ratio-curve", "--samples", "50", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = read(&out);
    let lines: Vec<_> = text.lines().collect();
    assert!(lines[0].starts_with("# command=ratio-curve seed=7 "));
    assert!(lines[0].contains("alpha=") && lines[0].contains(" r="));
    assert_eq!(lines[1], "beta,C_asymptotic,C_prime");
    assert_eq!(lines.len(), 52);
    let o = raysearch(&["ratio-curve", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        let o = raysearch(&[
            "--seed", "3", "--workers", workers, "terrain-sim", "--rays", "400", "--turns", "16", "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let a = run("a.json", "1");
    assert_eq!(a, run("b.json", "1"));
    assert_eq!(a, run("c.json", "3"));
}

#[test]
fn lower_bound_columns() {
    let o = raysearch(&["lower-bound", "--samples", "10"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[1], "d_y,R");
    let last: Vec<f64> = lines[11].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 9.063577796336).abs() < 1e-9);
}

#[test]
fn simulate_json() {
    let o = raysearch(&["simulate", "--turn", "25"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["command"], "simulate");
    assert_eq!(v["config"]["params"]["turn"], 25.0);
    let sim = v["result"]["report"]["ratio"].as_f64().unwrap();
    let fin = v["result"]["ratio_finite"].as_f64().unwrap();
    assert!((sim - fin).abs() < 1e-8);
}

#[test]
fn terrain_sim_reads_a_terrain_file() {
    let dir = tempfile::tempdir().unwrap();
    let terrain = dir.path().join("t.json");
    std::fs::write(&terrain, r#"{"barriers": [[-30.0, 40.0], [4.0, 3.0], [120.0, 500.0]]}"#).unwrap();
    let o = raysearch(&["terrain-sim", "--terrain", terrain.to_str().unwrap(), "--rays", "300", "--turns", "14"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["terrain"]["barriers"].as_array().unwrap().len(), 3);
    assert!(v["result"]["report"]["worst"]["ratio"].as_f64().unwrap() >= 1.0);
}

#[test]
fn verify_reports_a_missing_terrain_and_keeps_going() {
    let o = raysearch(&["verify", "--terrain", "no/such/terrain.json"]);
    assert!(!o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines[..11].iter().all(|l| l.starts_with("PASS [") || l.starts_with("FAIL [")));
    assert!(lines[11].starts_with("FAIL [terrain]") && lines[11].contains("error"));
}
