use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn osp22(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osp22"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("OSP22_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn verify_all_passes_with_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let o = osp22(&["verify", "all"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report = read_json(&dir.path().join("verify-all.json"));
    let checks = report["payload"]["checks"].as_array().unwrap();
    assert!(checks.len() >= 40, "{} checks", checks.len());
    assert_eq!(report["payload"]["pass"], Value::Bool(true));
    assert!(checks.iter().all(|c| c["pass"] == Value::Bool(true)));
}

#[test]
fn small_truncation_still_passes_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let o = osp22(&["verify", "algebra", "--nmax", "8"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report = read_json(&dir.path().join("verify-algebra.json"));
    assert_eq!(report["payload"]["config"]["nmax"], 8);
}

#[test]
fn sample_near_boundary_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = osp22(&["verify", "coherent", "--z", "0.99"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("0.99"));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = osp22(&["verify", "algebra", "--nmax", "8", "--tol-algebra", "1e-300"], dir.path());
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
    let report = read_json(&dir.path().join("verify-algebra.json"));
    assert_eq!(report["payload"]["pass"], Value::Bool(false));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&osp22(&["verify", "everything"], dir.path())), 2);
    assert_eq!(code(&osp22(&["verify", "basis", "--tol-residual", "0"], dir.path())), 2);
    assert_eq!(code(&osp22(&["verify", "basis", "--format", "xml"], dir.path())), 2);
    assert_eq!(code(&osp22(&["profile", "--z", "1.2"], dir.path())), 2);
    assert_eq!(code(&osp22(&["profile", "--z", "nonsense"], dir.path())), 2);
}

#[test]
fn profile_of_the_vacuum() {
    let dir = tempfile::tempdir().unwrap();
    let o = osp22(&["profile", "--z", "0", "--t", "0", "--grid", "-10:10:2001"], dir.path());
    assert_eq!(code(&o), 0);
    let path = dir.path().join("profile.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# t = 0"));
    assert!(text.contains("# sigma = 1+0i"));
    let rows = csv_rows(&path);
    let dx = rows[1][0] - rows[0][0];
    let mut mass = 0.0;
    for r in &rows {
        let gauss = (2.0 * std::f64::consts::PI).powf(-0.25) * (-r[0] * r[0] / 4.0).exp();
        assert!((r[1] - gauss).abs() < 1e-14);
        mass += (r[1] * r[1] + r[2] * r[2]) * dx;
        if r[0] == 0.0 {
            assert!(r[3].hypot(r[4]) < 1e-15);
        }
    }
    assert!((mass - 1.0).abs() < 1e-10);
}

#[test]
fn profile_phi_vanishes_at_origin() {
    let dir = tempfile::tempdir().unwrap();
    let o = osp22(&["profile", "--z=-0.3+0.4i", "--t", "1.5", "--grid", "-2:2:5"], dir.path());
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&dir.path().join("profile.csv"));
    assert_eq!(rows[2][0], 0.0);
    assert!(rows[2][3].hypot(rows[2][4]) < 1e-15);
}

#[test]
fn symbols_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = osp22(&["symbols", "--z", "0", "--z", "0.3+0.2i"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = read_json(&dir.path().join("symbols.json"));
    let rows = report["records"].as_array().unwrap();
    assert_eq!(rows.len(), 2 * 2 * 8);
    for r in rows {
        assert!(r["defect"].as_f64().unwrap() < 1e-8);
    }
    let k0 = rows
        .iter()
        .find(|r| r["generator"] == "K0" && r["z"]["re"] == 0.0 && r["alpha_coeff"]["re"] == 0.0)
        .unwrap();
    assert!((k0["computed_body"]["re"].as_f64().unwrap() - 0.25).abs() < 1e-15);
    assert!(k0["computed_soul"].as_array().unwrap().is_empty());
}

#[test]
fn trajectory_is_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["trajectory", "--z", "0.2-0.5i", "--alpha", "0.5+1i", "--t", "0", "--t", "1", "--t", "2.5", "--t", "4"];
    let o = osp22(&args, dir.path());
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&dir.path().join("trajectory.csv"));
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert!(r[11] < 1e-9, "fit residual {}", r[11]);
        assert!(r[9] < 1e-10 && r[10] < 1e-10);
        assert_eq!((r[3], r[4]), (rows[0][3], rows[0][4]));
    }
}

#[test]
fn config_file_from_environment_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "nmax = 9\nnodes = 120\nformat = \"csv\"\n").unwrap();
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_osp22"))
            .args(["verify", "grassmann", "--out"])
            .arg(dir.path())
            .args(extra)
            .env("OSP22_CONFIG", &cfg)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run(&[])), 0);
    assert!(dir.path().join("verify-grassmann.csv").exists());
    assert_eq!(code(&run(&["--format", "json"])), 0);
    let report = read_json(&dir.path().join("verify-grassmann.json"));
    assert_eq!(report["payload"]["config"]["nmax"], 9);
    assert_eq!(report["payload"]["config"]["nodes"], 120);

    std::fs::write(&cfg, "nmax = 9\nmystery = 1\n").unwrap();
    assert_eq!(code(&run(&[])), 2);
}
