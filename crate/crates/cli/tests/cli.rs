//! End-to-end tests of the command-line driver: exit codes, report
//! contents, atlas determinism, and the analyze/sweep consistency
//! invariant.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abelcycles"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, text).unwrap();
    path
}

fn run(sub: &str, config: &Path, out: &Path) -> Output {
    bin()
        .args([sub, "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn json_report(out: &Path, name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(out.join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

const QUAD_HOPF: &str = r#"{
  "schema_version": 1,
  "family": {"kind": "quad_poly", "t_a": 0.6666666666666666, "t_b": 0.3333333333333333}
}"#;

#[test]
fn analyze_quad_hopf_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), QUAD_HOPF);
    let out = run("analyze", &cfg, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json_report(dir.path(), "analyze.json");
    assert_eq!(r["schema_version"], 1);
    assert!(r["hopf"]["c2"].as_f64().unwrap().abs() < 1e-12);
    assert!(r["hopf"]["c3"].as_f64().unwrap().abs() < 1e-12);
    assert!((r["hopf"]["c4"].as_f64().unwrap() + 1.0 / 540.0).abs() < 1e-12);
    assert_eq!(r["short_circuit"], false);
    assert_eq!(r["criteria"]["c2"]["verdict"], "True");
    assert_eq!(r["criteria"]["c3"]["verdict"], "True");
    assert_eq!(r["zero_structure"]["verdict"], true);
}

#[test]
fn analyze_short_circuits_on_combination_precheck() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
  "schema_version": 1,
  "family": {"kind": "quad_poly", "t_a": 0.3, "t_b": 0.5}
}"#,
    );
    let out = run("analyze", &cfg, dir.path());
    assert!(out.status.success());
    let r = json_report(dir.path(), "analyze.json");
    assert_eq!(r["uniqueness_precheck"], "AtMostOneByCombination");
    assert_eq!(r["short_circuit"], true);
    assert!(r["criteria"].is_null());
}

#[test]
fn analyze_negative_trig_parameters_find_no_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
  "schema_version": 1,
  "family": {"kind": "lin_trig", "a0": -0.1, "b0": -0.1, "b1": 0.0, "b2": 1.0}
}"#,
    );
    let out = run("analyze", &cfg, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json_report(dir.path(), "analyze.json");
    assert_eq!(r["cycles"]["cycles"].as_array().unwrap().len(), 0);
}

#[test]
fn malformed_config_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{ not json");
    let out = run("analyze", &cfg, dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
  "schema_version": 1,
  "family": {"kind": "quad_poly", "t_a": 0.5, "t_b": 0.3},
  "sweep": {"param": "t_a", "lo": 0.4, "hi": 0.9, "steps": 0}
}"#,
    );
    let out = run("sweep", &cfg, dir.path());
    assert_eq!(out.status.code(), Some(2));
}

const SWEEP_FOLD: &str = r#"{
  "schema_version": 1,
  "family": {"kind": "quad_poly", "t_a": 0.5, "t_b": 0.31333333333333335},
  "sweep": {"param": "t_a", "lo": 0.64, "hi": 0.65, "steps": 6}
}"#;

fn atlas_cycle_counts(out: &Path) -> Vec<usize> {
    let text = std::fs::read_to_string(out.join("atlas.csv")).unwrap();
    text.lines()
        .skip(2)
        .map(|line| line.split(',').nth(8).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn sweep_crosses_a_fold_and_is_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let cfg = write_config(dir_a.path(), SWEEP_FOLD);
    let out = run("sweep", &cfg, dir_a.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // Cycle count rises to two ahead of the fold and drops past it.
    let counts = atlas_cycle_counts(dir_a.path());
    assert_eq!(counts.len(), 6);
    assert_eq!(*counts.iter().max().unwrap(), 2);
    assert_eq!(*counts.first().unwrap(), 1);
    assert_eq!(*counts.last().unwrap(), 0);

    // Identical configuration, different worker count: bit-identical CSV.
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir_b.path())
        .args(["--jobs", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let a = std::fs::read(dir_a.path().join("atlas.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("atlas.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn single_step_sweep_matches_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
  "schema_version": 1,
  "family": {"kind": "quad_poly", "t_a": 0.646, "t_b": 0.31333333333333335},
  "sweep": {"param": "t_a", "lo": 0.646, "hi": 0.646, "steps": 1}
}"#,
    );
    let out = run("sweep", &cfg, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let counts = atlas_cycle_counts(dir.path());
    assert_eq!(counts.len(), 1);

    let out = run("analyze", &cfg, dir.path());
    assert!(out.status.success());
    let r = json_report(dir.path(), "analyze.json");
    assert_eq!(r["cycles"]["cycles"].as_array().unwrap().len(), counts[0]);
}

#[test]
fn curves_exports_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
  "schema_version": 1,
  "family": {"kind": "quad_poly", "t_a": 0.6466666666666666, "t_b": 0.31333333333333335},
  "grid": {"curve_samples": 100},
  "sweep": {"param": "t_a", "lo": 0.6, "hi": 0.66, "steps": 2}
}"#,
    );
    let out = run("curves", &cfg, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let lines = |name: &str| -> Vec<String> {
        std::fs::read_to_string(dir.path().join(name))
            .unwrap()
            .lines()
            .map(str::to_string)
            .collect()
    };
    let phi = lines("phi.csv");
    assert_eq!(phi[0], "t,phi");
    assert_eq!(phi.len(), 102);
    // phi = -B / (2 A) has a pole at t = 0 where A vanishes.
    assert!(phi[1].ends_with(','));

    let ab = lines("alpha_beta.csv");
    assert_eq!(ab[0], "t,u,alpha,beta");
    assert_eq!(ab.len(), 102);

    let disp = lines("displacement.csv");
    assert_eq!(disp[0], "x,displacement");
    assert_eq!(disp.len(), 101);

    let lambda = lines("lambda.csv");
    assert_eq!(lambda[0], "x,param");
    assert_eq!(lambda.len(), 101);
    // Every recovered parameter lies inside the declared sweep range.
    for line in &lambda[1..] {
        let v = line.split(',').nth(1).unwrap();
        if !v.is_empty() {
            let p: f64 = v.parse().unwrap();
            assert!((0.6..=0.66).contains(&p), "{p}");
        }
    }
}

#[test]
fn trig_infinity_reports_saddle_eigenvalues() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
  "schema_version": 1,
  "family": {"kind": "lin_trig", "a0": 0.0, "b0": 0.0, "b1": 0.0, "b2": 1.0}
}"#,
    );
    let out = run("trig-infinity", &cfg, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json_report(dir.path(), "trig_infinity.json");
    let eigs = r["infinity"]["eigenvalues"].as_array().unwrap();
    let s5 = 5.0f64.sqrt();
    assert!((eigs[0].as_f64().unwrap() - (-1.0 - s5) / 2.0).abs() < 1e-10);
    assert!((eigs[1].as_f64().unwrap() - (-1.0 + s5) / 2.0).abs() < 1e-10);
    assert_eq!(r["q_region"]["region"], "QNegative");

    // quad_poly config is a precondition failure for this command.
    let cfg2 = dir.path().join("quad.json");
    std::fs::write(&cfg2, QUAD_HOPF).unwrap();
    let out = run("trig-infinity", &cfg2, dir.path());
    assert_eq!(out.status.code(), Some(2));
}
