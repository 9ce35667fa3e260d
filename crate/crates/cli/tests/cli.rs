//! Runs the `zpf` binary end to end on small configurations.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SMALL_UNRUH: &str = "[unruh]\nt_obs = 6.0\nbins = 9\nomega_out_max = 2.5\n";

fn zpf(args: &[&str]) -> Output {
    zpf_in_env(args, None)
}

fn zpf_in_env(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zpf"));
    cmd.args(args).env_remove("ZPF_OUT_DIR");
    if let Some(d) = out_dir {
        cmd.env("ZPF_OUT_DIR", d);
    }
    cmd.output().expect("zpf runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn small_config(dir: &tempfile::TempDir) -> PathBuf {
    let p = dir.path().join("small.toml");
    std::fs::write(&p, SMALL_UNRUH).unwrap();
    p
}

/// (metadata line, header, data rows) of a CSV produced by `zpf`.
fn split_csv(text: &str) -> (String, Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let meta = lines.next().unwrap().to_owned();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    (meta, header, rows)
}

#[test]
fn gamma_check_writes_pairs_and_passes() {
    let o = zpf(&["gamma-check"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (meta, header, rows) = split_csv(std::str::from_utf8(&o.stdout).unwrap());
    assert!(meta.starts_with("# seed=0 units=natural command=gamma-check version="), "{meta}");
    assert_eq!(header, ["x", "residual"]);
    assert_eq!(rows.len(), 50);
    for r in &rows {
        let x: f64 = r[0].parse().unwrap();
        let res: f64 = r[1].parse().unwrap();
        assert!((0.05 * (1.0 - 1e-12)..=10.0 * (1.0 + 1e-12)).contains(&x));
        assert!(res.abs() <= 1e-9);
    }
}

#[test]
fn ode_example() {
    let o = zpf(&["ode", "--omega", "1", "--t-start", "0.1", "--t-end", "2"]);
    assert_eq!(code(&o), 0);
    let (_, header, rows) = split_csv(std::str::from_utf8(&o.stdout).unwrap());
    assert_eq!(header, ["T", "rho_numeric", "rho_closed", "rel_err"]);
    assert_eq!(rows.len(), 2001);
    let last: Vec<f64> = rows.last().unwrap().iter().map(|c| c.parse().unwrap()).collect();
    assert!((last[0] - 2.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() <= 1e-6));
    // scientific notation with 17 significant digits
    assert!(rows[1][1].contains('e') && rows[1][1].split('e').next().unwrap().len() >= 17);
}

#[test]
fn spectra_columns() {
    let o = zpf(&["spectra", "--kind", "zeropoint", "--points", "5"]);
    assert_eq!(code(&o), 0);
    let (_, header, rows) = split_csv(std::str::from_utf8(&o.stdout).unwrap());
    assert_eq!(header, ["omega", "value", "kind", "temperature"]);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[2] == "zeropoint"));
}

#[test]
fn unruh_mc_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(&dir);
    let cfg = cfg.to_str().unwrap();
    let run = |name: &str, seed: &str| {
        let out = dir.path().join(name);
        let o = zpf(&["unruh-mc", "--config", cfg, "--seed", seed, "--n", "100", "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let a = run("a.csv", "7");
    let b = run("b.csv", "7");
    assert_eq!(a, b);
    assert_ne!(a, run("c.csv", "8"));
    let (meta, header, rows) = split_csv(std::str::from_utf8(&a).unwrap());
    assert!(meta.starts_with("# seed=7 "));
    assert_eq!(
        header,
        ["omega_out", "expected", "mc_mean", "mc_stderr", "theory_convolved", "theory_raw"]
    );
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.iter().all(|c| !c.is_empty())));
}

#[test]
fn unruh_expected_leaves_monte_carlo_columns_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(&dir);
    let o = zpf(&["unruh-expected", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let (_, _, rows) = split_csv(std::str::from_utf8(&o.stdout).unwrap());
    assert!(rows.iter().all(|r| r[2].is_empty() && r[3].is_empty()));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&zpf(&["ode", "--tolerance", "1e-12"])), 1);
    assert_eq!(code(&zpf(&["ode", "--tolerance", "-1"])), 2);
    assert_eq!(code(&zpf(&["unruh-expected", "--unit-system", "si"])), 2);
    assert_eq!(code(&zpf(&["ode", "--no-such-flag"])), 2);
    assert_eq!(code(&zpf(&["not-a-command"])), 2);
    assert_eq!(code(&zpf(&[])), 2);
    assert_eq!(code(&zpf(&["--help"])), 0);
    // numeric failure inside a module: the trajectory guard at |a tau / c| > 30
    let o = zpf(&["kinematics", "--tau-max", "40"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("kinematics"));
    // unwritable output path is reported with the path
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let target = blocker.join("out.csv");
    let o = zpf(&["gamma-check", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("file"));
}

#[test]
fn output_directory_from_environment_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = zpf_in_env(&["ode", "--steps", "400", "--tolerance", "1e-4"], Some(dir.path()));
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let data = std::fs::read_to_string(dir.path().join("ode.csv")).unwrap();
    assert!(data.starts_with("# seed=0 units=natural command=ode"));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("ode.report.json")).unwrap()).unwrap();
    assert_eq!(report["command"], "ode");
    assert_eq!(report["passed"], true);
    assert_eq!(report["config"]["ode"]["steps"], 400);
    assert!(report["wall_time_s"].as_f64().unwrap() >= 0.0);
    for c in report["checks"].as_array().unwrap() {
        let (v, t) = (c["value"].as_f64().unwrap(), c["tolerance"].as_f64().unwrap());
        let holds = if c["relation"] == "at_most" { v <= t } else { v >= t };
        assert_eq!(c["passed"].as_bool().unwrap(), holds);
    }
    // no stray temporaries
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn json_mirrors_csv() {
    let csv = zpf(&["wien", "--points", "4"]);
    let json = zpf(&["wien", "--points", "4", "--format", "json"]);
    assert_eq!((code(&csv), code(&json)), (0, 0));
    let (_, header, rows) = split_csv(std::str::from_utf8(&csv.stdout).unwrap());
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc["metadata"]["command"], "wien");
    assert_eq!(doc["metadata"]["seed"], 0);
    assert_eq!(doc["columns"], serde_json::json!(header));
    let jrows = doc["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), rows.len());
    for (j, r) in jrows.iter().zip(&rows) {
        for (name, cell) in header.iter().zip(r) {
            assert_eq!(j[name].as_f64().unwrap(), cell.parse::<f64>().unwrap());
        }
    }
}

#[test]
fn every_quick_command_passes_by_default() {
    for c in ["spectra", "invariance", "wien", "kinematics", "fluctuations"] {
        let o = zpf(&[c]);
        assert_eq!(code(&o), 0, "{c}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
