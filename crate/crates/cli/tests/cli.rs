// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn riga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riga")).args(args).env_remove("RIGA_THREADS").output().unwrap()
}

fn write_config(dir: &Path, name: &str, cfg: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(cfg).unwrap()).unwrap();
    path
}

fn cplx(re: f64, im: f64) -> Value {
    json!([re, im])
}

/// Qubit with drift `sigma_z / 2` and `x`, `y` drives.
fn qubit_system() -> Value {
    let z = cplx(0.0, 0.0);
    json!({
        "kind": "explicit",
        "drift": [[cplx(0.5, 0.0), z], [z, cplx(-0.5, 0.0)]],
        "controls": [
            [[z, cplx(0.5, 0.0)], [cplx(0.5, 0.0), z]],
            [[z, cplx(0.0, -0.5)], [cplx(0.0, 0.5), z]]
        ]
    })
}

fn hadamard_gate() -> Value {
    let s = 0.5f64.sqrt();
    json!({
        "e": [[cplx(1.0, 0.0), cplx(0.0, 0.0)], [cplx(0.0, 0.0), cplx(1.0, 0.0)]],
        "f": [[cplx(s, 0.0), cplx(s, 0.0)], [cplx(s, 0.0), cplx(-s, 0.0)]]
    })
}

fn rotation_gate(a: f64) -> Value {
    let (c, s) = (a.cos(), a.sin());
    json!({
        "e": [[cplx(1.0, 0.0), cplx(0.0, 0.0)], [cplx(0.0, 0.0), cplx(1.0, 0.0)]],
        "f": [[cplx(c, 0.0), cplx(0.0, -s)], [cplx(0.0, -s), cplx(c, 0.0)]]
    })
}

fn qubit_config(variant: &str, gain: f64) -> Value {
    json!({
        "system": qubit_system(),
        "gate": hadamard_gate(),
        "riga": {
            "gain": gain, "t_final": 4.0, "n_sim": 80, "target_infidelity": 1e-3, "max_steps": 300,
            "variant": variant,
            "seed": {"harmonics": 3, "period": 12.566370614359172, "amplitude": 0.2, "rng_seed": 1}
        }
    })
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn missing_config_names_the_path() {
    let o = riga(&["run", "--config", "/nonexistent/riga.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/riga.json"), "{}", stderr(&o));
}

#[test]
fn schema_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "{\n  \"system\": {\"kind\": \"qubit_chain\"},\n  \"riga\": 3,\n  \"outputs\": {\"report\": \"yes\"}\n}",
    )
    .unwrap();
    let o = riga(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn run_writes_artifacts_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "q.json", &qubit_config("smooth", 0.5));
    let cfg = cfg.to_str().unwrap();
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    let out3 = dir.path().join("c");
    for out in [&out1, &out2] {
        let o = riga(&["run", "--config", cfg, "--out", out.to_str().unwrap(), "--quiet"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    let pulses = read(&out1.join("pulses.csv"));
    assert_eq!(pulses, read(&out2.join("pulses.csv")));
    assert!(pulses.starts_with("t,u_1,u_2\n"));
    assert_eq!(pulses.lines().count(), 1 + 81);
    let conv = read(&out1.join("convergence.csv"));
    assert!(conv.starts_with("step,infidelity,lyapunov,goal_index,max_pulse,wall_ms\n"));
    let spectra = read(&out1.join("spectra.csv"));
    assert!(spectra.starts_with("frequency,u_1,u_2,average\n"));

    let report: Value = serde_json::from_str(&read(&out1.join("report.json"))).unwrap();
    assert_eq!(report["converged"], json!(true));
    assert!(report["final_infidelity"].as_f64().unwrap() <= 1e-3);
    let schema: Value = serde_json::from_str(include_str!("../report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");

    let o = riga(&["run", "--config", cfg, "--out", out3.to_str().unwrap(), "--seed", "99", "--quiet"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_ne!(pulses, read(&out3.join("pulses.csv")));
}

#[test]
fn max_steps_override_gives_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "q.json", &qubit_config("smooth", 0.5));
    let out = dir.path().join("o");
    let o = riga(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--max-steps", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    assert_eq!(report["termination"]["reason"], json!("max_steps"));
    assert_eq!(report["steps"], json!(1));
}

#[test]
fn grape_with_zero_gain_does_not_converge() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "q.json", &qubit_config("piecewise", 0.0));
    let out = dir.path().join("o");
    let o = riga(&["grape", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn grape_descends() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = qubit_config("smooth", 0.05);
    cfg["gate"] = rotation_gate(1.1);
    cfg["riga"]["target_infidelity"] = json!(1e-12);
    cfg["riga"]["max_steps"] = json!(12);
    let path = write_config(dir.path(), "q.json", &cfg);
    let out = dir.path().join("o");
    let o = riga(&["grape", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let conv = read(&out.join("convergence.csv"));
    let omega: Vec<f64> =
        conv.lines().skip(1).take(10).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(omega.len(), 10);
    assert!(omega.windows(2).all(|w| w[1] < w[0]), "{omega:?}");
    // piecewise rows carry left edges
    let pulses = read(&out.join("pulses.csv"));
    assert_eq!(pulses.lines().count(), 1 + 80);
    let a = riga(&[
        "grape",
        "--config",
        path.to_str().unwrap(),
        "--out",
        dir.path().join("p").to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(a.status.code(), Some(2));
    assert_eq!(pulses, read(&dir.path().join("p/pulses.csv")));
}

#[test]
fn verify_zero_pulses() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "q.json", &qubit_config("smooth", 0.5));
    let mut text = String::from("t,u_1,u_2\n");
    for s in 0..=80 {
        text.push_str(&format!("{},0,0\n", 4.0 * s as f64 / 80.0));
    }
    let pulses = dir.path().join("zero.csv");
    std::fs::write(&pulses, text).unwrap();
    let o = riga(&["verify", "--config", cfg.to_str().unwrap(), "--pulses", pulses.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&read(&dir.path().join("verify.json"))).unwrap();
    assert!(v["halfstep_infidelity"].as_f64().unwrap() <= 1e-12);
    assert!(v["max_unitarity_defect"].as_f64().unwrap() <= 1e-12);
    assert!(v["resimulation"].is_null());
    let pops = read(&dir.path().join("populations.csv"));
    assert!(pops.starts_with("t,good\n"));
    assert_eq!(pops.lines().count(), 82);

    // a file for another grid is rejected
    let cfg2 = {
        let mut c = qubit_config("smooth", 0.5);
        c["riga"]["n_sim"] = json!(60);
        write_config(dir.path(), "q2.json", &c)
    };
    let o = riga(&["verify", "--config", cfg2.to_str().unwrap(), "--pulses", pulses.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("rows"), "{}", stderr(&o));
}

#[test]
fn verify_transmon_reports_populations_and_larger_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = json!({
        "system": {"kind": "transmon_pair", "levels": 3},
        "riga": {"n_sim": 400, "max_steps": 1}
    });
    let path = write_config(dir.path(), "t.json", &cfg);
    let out = dir.path().join("o");
    let o = riga(&["run", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    assert_eq!(report["levels"], json!(9));
    assert!(report["final_populations"]["forbidden"].is_number());

    let pulses = out.join("pulses.csv");
    let o = riga(&["verify", "--config", path.to_str().unwrap(), "--pulses", pulses.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&read(&out.join("verify.json"))).unwrap();
    assert_eq!(v["resimulation"]["levels"], json!("6x6"));
    let pops = read(&out.join("populations.csv"));
    assert!(pops.starts_with("t,good,forbidden\n"));
    let max_forb = v["max_forbidden_population"].as_f64().unwrap();
    let col_max =
        pops.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap()).fold(0.0, f64::max);
    assert_eq!(col_max, max_forb);
}

#[test]
fn chain_of_three_reaches_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "c.json", &json!({"system": {"kind": "qubit_chain", "qubits": 3}}));
    let out = dir.path().join("o");
    let o = riga(&["run", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    assert!(report["final_infidelity"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn thread_variable_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "q.json", &qubit_config("smooth", 0.5));
    let o = Command::new(env!("CARGO_BIN_EXE_riga"))
        .args(["run", "--config", cfg.to_str().unwrap(), "--max-steps", "0", "--quiet"])
        .arg("--out")
        .arg(dir.path().join("o"))
        .env("RIGA_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("RIGA_THREADS"));
}
