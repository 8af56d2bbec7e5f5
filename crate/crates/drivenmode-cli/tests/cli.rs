//! End-to-end tests against the built binary: exit codes, output formats,
//! determinism, and the scenario examples.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SIX_PI: &str = "18.84955592153875943";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_drivenmode"))
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

fn run_ok(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn json_at(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn run_constant_profile_null_force_has_zero_occupation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    write(
        &cfg,
        &format!(
            r#"
[profile]
kind = "constant"
omega0 = 2.0

[run]
method = "numeric"
tol = 1e-9

[grid]
t_min = -10.0
t_max = 10.0

[output]
prefix = "{}/out"
"#,
            dir.path().display()
        ),
    );
    let out = bin().args(["run", "--config"]).arg(&cfg).output().unwrap();
    run_ok(&out);
    let j = json_at(&dir.path().join("out_summary.json"));
    assert!(j["occupation"].as_f64().unwrap() < 1e-18);
    assert!((j["a"]["abs"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    // trajectory CSV written for the numeric method
    let csv = fs::read_to_string(dir.path().join("out_trajectory.csv")).unwrap();
    assert!(csv.starts_with("t,re_xi,im_xi,re_xi_dot,im_xi_dot"));
}

#[test]
fn run_strong_suppression_scenario_reports_tiny_b() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("u.toml");
    write(
        &cfg,
        &format!(
            r#"
[profile]
kind = "sech_bump"
omega0 = {SIX_PI}
Omega = 1.0
T = 0.5
sign = "plus"

[force]
kind = "gauss_cos"
F0 = 1.0
omega_f = {SIX_PI}
t_f = 0.0
T2 = 1.0

[run]
method = "numeric"
tol = 1e-8

[output]
prefix = "{}/u"
"#,
            dir.path().display()
        ),
    );
    let out = bin().args(["run", "--config"]).arg(&cfg).output().unwrap();
    run_ok(&out);
    let j = json_at(&dir.path().join("u_summary.json"));
    let b_abs = j["b"]["abs"].as_f64().unwrap();
    assert!(b_abs < 1e-12, "|B| = {b_abs:.3e}");
    assert!((0.5e-13..6e-13).contains(&b_abs), "|B| = {b_abs:.3e}");
}

#[test]
fn invalid_method_profile_combination_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    write(
        &cfg,
        &format!(
            r#"
[profile]
kind = "sech_bump"
omega0 = 2.0
Omega = 0.5
T = 1.0
sign = "minus"

[run]
method = "exact"

[output]
prefix = "{}/bad"
"#,
            dir.path().display()
        ),
    );
    let out = bin().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not compatible"), "stderr: {err}");
}

#[test]
fn missing_config_and_malformed_toml_exit_2() {
    let out = bin()
        .args(["run", "--config", "/nonexistent/x.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("m.toml");
    write(&cfg, "this is not toml [");
    let out = bin().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic_and_hash_stamped() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    write(
        &cfg,
        &format!(
            r#"
[profile]
kind = "sech_bump"
omega0 = 2.0
Omega = 1.0
T = 1.0
sign = "plus"

[force]
kind = "gauss_cos"
F0 = 1.0
omega_f = 2.0
t_f = 0.0
T2 = 1.0

[run]
method = "exact"
tol = 1e-9

[sweep]
parameter = "t_f"
start = -5.0
stop = 5.0
count = 21

[output]
prefix = "{}/s"
threads = 3
"#,
            dir.path().display()
        ),
    );
    let out = bin()
        .args(["sweep-tf", "--plot", "svg", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    run_ok(&out);
    let first = fs::read(dir.path().join("s_sweep.csv")).unwrap();
    // re-run with a different worker count: bytes must be identical
    let out = bin()
        .args(["sweep-tf", "--threads", "1", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    run_ok(&out);
    let second = fs::read(dir.path().join("s_sweep.csv")).unwrap();
    assert_eq!(first, second, "sweep output must be bit-identical");

    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "t_f,re_alpha,im_alpha,abs_alpha,occupation,config_hash"
    );
    let hash = lines
        .next()
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .to_string();
    assert_eq!(hash.len(), 12);
    assert_eq!(text.lines().count(), 22);
    for line in text.lines().skip(1) {
        assert!(line.ends_with(&hash), "hash missing on row: {line}");
    }
    assert!(dir.path().join("s_sweep.svg").exists());

    // sweeping a parameter other than t_f is a config error
    let bad = fs::read_to_string(&cfg)
        .unwrap()
        .replace("\"t_f\"", "\"T2\"");
    write(&cfg, &bad);
    let out = bin()
        .args(["sweep-tf", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_emits_table_and_deviations() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    write(
        &cfg,
        &format!(
            r#"
[profile]
kind = "sech_bump"
omega0 = 1.0
Omega = 0.05
T = 1.0
sign = "plus"

[force]
kind = "gauss_cos"
F0 = 1.0
omega_f = 1.0
t_f = 0.0
T2 = 1.0

[run]
method = "numeric"
tol = 1e-10
methods = ["exact", "born"]

[output]
prefix = "{}/c"
"#,
            dir.path().display()
        ),
    );
    let out = bin()
        .args(["compare", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    run_ok(&out);
    let dev = fs::read_to_string(dir.path().join("c_compare_deviations.csv")).unwrap();
    let row = dev.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[0], "exact");
    assert_eq!(cols[1], "born");
    // measured Born-vs-exact B deviation at Omega T = 0.05 is
    // (Omega T)^2 (1 + ...) = 2.506e-3
    let rel_b: f64 = cols[3].parse().unwrap();
    assert!(
        (2.4e-3..2.6e-3).contains(&rel_b),
        "born vs exact B deviation {rel_b:.4e}"
    );
    let table = fs::read_to_string(dir.path().join("c_compare.csv")).unwrap();
    assert_eq!(table.lines().count(), 3);
}

#[test]
fn compare_on_constant_profile_all_methods_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("k.toml");
    write(
        &cfg,
        &format!(
            r#"
[profile]
kind = "constant"
omega0 = 2.0

[force]
kind = "gauss_cos"
F0 = 1.0
omega_f = 2.0
t_f = 0.0
T2 = 1.0

[grid]
t_min = -12.0
t_max = 12.0

[run]
method = "numeric"
tol = 1e-9

[output]
prefix = "{}/k"
"#,
            dir.path().display()
        ),
    );
    let out = bin()
        .args(["compare", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    run_ok(&out);
    let table = fs::read_to_string(dir.path().join("k_compare.csv")).unwrap();
    // all five methods participate and agree: A = 1, B = 0
    assert_eq!(table.lines().count(), 6);
    for line in table.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let re_a: f64 = cols[1].parse().unwrap();
        let im_a: f64 = cols[2].parse().unwrap();
        let re_b: f64 = cols[3].parse().unwrap();
        let im_b: f64 = cols[4].parse().unwrap();
        assert!((re_a - 1.0).abs() < 1e-8, "{line}");
        assert!(im_a.abs() < 1e-8);
        assert!(re_b.abs() < 1e-9 && im_b.abs() < 1e-9);
    }
    let dev = fs::read_to_string(dir.path().join("k_compare_deviations.csv")).unwrap();
    for line in dev.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let da: f64 = cols[2].parse().unwrap();
        let dalpha: f64 = cols[4].parse().unwrap();
        assert!(da < 1e-8 && dalpha < 1e-6, "{line}");
    }
}

#[test]
fn multimode_subcommand_writes_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    write(
        &sys,
        r#"{
            "omegas": [1.0, 1.6],
            "pulses": [{"i": 0, "j": 1, "amplitude": 0.2, "t_scale": 1.0}],
            "forces": [
                {"kind": "gauss_cos", "f0": 1.0, "omega_f": 1.0, "t_f": 0.0, "t2": 1.0},
                {"kind": "null"}
            ]
        }"#,
    );
    let prefix = dir.path().join("mm");
    let out = bin()
        .args(["multimode", "--system"])
        .arg(&sys)
        .args(["--out"])
        .arg(&prefix)
        .args(["--t-min", "-30", "--t-max", "30", "--tol", "1e-9"])
        .output()
        .unwrap();
    run_ok(&out);
    let j = json_at(&dir.path().join("mm_summary.json"));
    assert!(j["unitarity_defect"].as_f64().unwrap() < 1e-8);
    for suffix in ["a", "b", "u", "v", "alpha"] {
        assert!(
            dir.path().join(format!("mm_{suffix}.csv")).exists(),
            "missing {suffix} csv"
        );
    }
    let a = fs::read_to_string(dir.path().join("mm_a.csv")).unwrap();
    assert_eq!(a.lines().count(), 3); // header + 2 rows
}

#[test]
fn unreachable_tolerance_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("t.toml");
    write(
        &cfg,
        &format!(
            r#"
[profile]
kind = "sech_bump"
omega0 = 2.0
Omega = 1.0
T = 1.0
sign = "plus"

[run]
method = "numeric"
tol = 1e-18

[output]
prefix = "{}/t"
"#,
            dir.path().display()
        ),
    );
    let out = bin().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("convergence"), "stderr: {err}");
}
