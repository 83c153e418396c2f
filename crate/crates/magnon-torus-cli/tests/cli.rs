//! End-to-end tests of the binary: subcommands, config overrides, exit
//! codes, and the environment-variable thread fallback.

use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_magnon-torus"))
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const PYTHAGOREAN_FM: &str = "
[lattice]
preset = chain

[couplings]
regime = FM
J = -3.0
D = 4.0
J_z = -1.0

[kgrid]
path = default
count = 7
";

const WORKED_FM: &str = "
[lattice]
preset = chain

[couplings]
regime = FM
J = -1.0
r = -0.1
J_z = -1.0

[kgrid]
path = default
count = 7

[run]
mn = 0, 0
mn = 1, 0
cutoff = 80
";

#[test]
fn classify_reports_radii() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "c.cfg", PYTHAGOREAN_FM);
    let out = bin().args(["classify", "--config", &cfg]).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("FM"));
    assert!(text.contains("5.0000000000000000e0"));
    assert!(text.contains("degenerate: circle class"));
}

#[test]
fn classify_rejects_bad_regime_signs_naming_entry() {
    let dir = tempfile::tempdir().unwrap();
    // J − r = -1 − (−3) = 2 > 0 violates I_22 in the FM regime.
    let cfg = write_config(&dir, "bad.cfg", &WORKED_FM.replace("r = -0.1", "r = -3.0"));
    let out = bin().args(["classify", "--config", &cfg]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("I_22"), "{}", stderr(&out));
}

#[test]
fn dual_worked_example_and_involution() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "d.cfg", WORKED_FM);
    let out = bin()
        .args(["dual", "--config", &cfg, "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"regime\":\"AFM\""));
    assert!(text.contains("\"J\":1.0000000000000001e-1"));
    assert!(text.contains("\"K\":1.0000000000000000e0"));
    assert!(text.contains("\"J_z\":1.0000000000000000e0"));
    // verification block: deviation at machine precision
    let dev = text
        .split("\"max_deviation\":")
        .nth(1)
        .unwrap()
        .trim_end_matches(|c: char| !c.is_ascii_digit())
        .trim_end();
    let dev: f64 = dev.split('}').next().unwrap().parse().unwrap();
    assert!(dev < 1e-12);
}

#[test]
fn dual_infeasible_source_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // r = K = 0: the squeezing circle collapses and no strict-sign AFM
    // representative exists.
    let cfg = write_config(&dir, "inf.cfg", &WORKED_FM.replace("r = -0.1", "r = 0.0"));
    let out = bin().args(["dual", "--config", &cfg]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("I_11"), "{}", stderr(&out));
}

#[test]
fn sweep_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "s.cfg", WORKED_FM);
    let out_path = dir.path().join("sweep.csv");
    let out = bin()
        .args([
            "sweep",
            "--config",
            &cfg,
            "--output",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("k_index,k_0,m,n,gamma_abs,chi_tilde,lambda_tilde,theta,"));
    // 7 k-points × 2 states + header
    assert_eq!(text.lines().count(), 15);
}

#[test]
fn sweep_env_thread_fallback_matches_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "s.cfg", WORKED_FM);
    let with_flag = bin()
        .args(["sweep", "--config", &cfg, "--threads", "1"])
        .output()
        .unwrap();
    let with_env = bin()
        .args(["sweep", "--config", &cfg])
        .env("MAGNON_TORUS_THREADS", "3")
        .output()
        .unwrap();
    assert!(with_flag.status.success());
    assert!(with_env.status.success());
    assert_eq!(stdout(&with_flag), stdout(&with_env));
}

#[test]
fn entropy_sp_in_bits_is_one_at_zone_center() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "e.cfg", WORKED_FM);
    let out = bin()
        .args(["entropy-sp", "--config", &cfg, "--base", "bits"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    // first (1,0) row is k = 0: Δ = 0 ⇒ θ = −π/4 ⇒ exactly one bit
    let text = stdout(&out);
    let row = text
        .lines()
        .find(|l| l.starts_with("0,") && l.contains(",1,0,"))
        .unwrap();
    let entropy: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((entropy - 1.0).abs() < 1e-12, "{row}");
}

#[test]
fn entropy_sq_marks_unstable_rows() {
    let dir = tempfile::tempdir().unwrap();
    let text = "
[lattice]
preset = chain

[couplings]
regime = AFM
J = 1.0
K = 0.1
J_z = 1.0

[kgrid]
point = 0.0
point = 1.0471975511965976
";
    let cfg = write_config(&dir, "u.cfg", text);
    let out = bin()
        .args(["entropy-sq", "--config", &cfg])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().ends_with("unstable"));
    assert!(text.lines().nth(2).unwrap().ends_with("ok"));
}

#[test]
fn dispersion_emits_one_row_per_k() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "d.cfg", WORKED_FM);
    let out = bin()
        .args(["dispersion", "--config", &cfg])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 8); // header + 7 k-points
}

#[test]
fn oracle_check_prints_pass_table() {
    let out = bin().arg("oracle-check").output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
    assert!(text.contains("splitting"));
    assert!(text.contains("squeezing"));
}

#[test]
fn missing_config_is_io_error() {
    let out = bin()
        .args(["classify", "--config", "/nonexistent/path.cfg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "c.cfg", WORKED_FM);
    let out = bin()
        .args([
            "sweep",
            "--config",
            &cfg,
            "--output",
            "/nonexistent-dir/out.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_1() {
    let out = bin().arg("classify").output().unwrap(); // missing --config
    assert_eq!(out.status.code(), Some(1));
}
