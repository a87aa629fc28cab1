// Copyright 2026 The warpsim Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use warpsim::Circuit;

fn warpsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_warpsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_writes_report_and_solution() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let csv = dir.path().join("u.csv");
    let o = warpsim(&[
        "solve",
        "--n-x",
        "2",
        "--n-p",
        "5",
        "--t",
        "0.02",
        "--out",
        report.to_str().unwrap(),
        "--solution-csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["equation"], "heat");
    assert!(v["diagnostics"]["fidelity"].as_f64().unwrap() > 0.99);
    assert!(v["parameters"]["r"].as_u64().unwrap() >= 1);
    assert!(v["diagnostics"]["step_counts"]["cnot"].as_u64().is_some());
    let rows = fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("index,x1,u_est_re"));
    assert_eq!(rows.lines().count(), 5);
}

#[test]
fn identical_configs_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    fs::write(
        &config,
        r#"{"equation": "advection", "a_vec": [1.0, -1.0], "n_x": 2, "n_p": 4, "t": 0.05,
            "profile": {"kind": "step", "lo": 0.25, "hi": 0.75}}"#,
    )
    .unwrap();
    let run = || {
        let o = warpsim(&["solve", "--config", config.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    let first = run();
    assert_eq!(first, run());
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["equation"], "advection");
    assert_eq!(v["parameters"]["a_vec"][1], -1.0);
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    fs::write(&config, r#"{"n_x": 2, "t": 0.3}"#).unwrap();
    let o = warpsim(&[
        "solve",
        "--config",
        config.to_str().unwrap(),
        "--t",
        "0.1",
        "--print-config",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t"], 0.1);
    assert_eq!(v["n_x"], 2);
    assert_eq!(v["n_p"], 7);
}

#[test]
fn sweep_runs_every_value_in_order() {
    let o = warpsim(&[
        "solve",
        "--n-x",
        "2",
        "--mode",
        "exact",
        "--sweep",
        "n_p=4,5,6",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let runs = v.as_array().unwrap();
    assert_eq!(runs.len(), 3);
    let n_ps: Vec<u64> = runs
        .iter()
        .map(|r| r["parameters"]["n_p"].as_u64().unwrap())
        .collect();
    assert_eq!(n_ps, [4, 5, 6]);
    let errors: Vec<f64> = runs
        .iter()
        .map(|r| r["diagnostics"]["relative_error"].as_f64().unwrap())
        .collect();
    assert!(errors[2] < errors[0], "{errors:?}");
}

#[test]
fn initial_condition_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let u0 = dir.path().join("u0.csv");
    fs::write(&u0, "index,value\n0,0.2\n1,1.0\n2,1.0\n3,0.2\n").unwrap();
    let o = warpsim(&[
        "solve",
        "--n-x",
        "2",
        "--n-p",
        "5",
        "--mode",
        "exact",
        "--u0-csv",
        u0.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::write(&u0, "1\n2\n3\n").unwrap();
    let o = warpsim(&["solve", "--n-x", "2", "--u0-csv", u0.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_two_and_names_the_field() {
    let o = warpsim(&["solve", "--n-x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n_x"));
    let o = warpsim(&["solve", "--equation", "advection", "--n-x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = warpsim(&["solve", "--eps", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = warpsim(&["solve", "--config", "/nonexistent/config.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = warpsim(&["solve", "--sweep", "colour=1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    for suite in ["commutators", "counts"] {
        let o = warpsim(&["verify", "--suite", suite, "--json", json.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).starts_with("name,params,kind,formula,measured,margin,pass"));
        let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
        assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
    }
    let o = warpsim(&["verify", "--suite", "trotter", "--quick"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("adv_step_swapped"));
    let o = warpsim(&["verify", "--suite", "commutators", "--n-x", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (format, ext) in [("text", "txt"), ("json", "json")] {
        let path = dir.path().join(format!("v0.{ext}"));
        let o = warpsim(&[
            "export",
            "v0",
            "--width",
            "3",
            "--tau",
            "0.1",
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let text = fs::read_to_string(&path).unwrap();
        let c = if format == "json" {
            Circuit::from_json(&text).unwrap()
        } else {
            Circuit::from_text(&text).unwrap()
        };
        assert_eq!(c, warpsim::heat::v0(0.1, 1.0, 3).unwrap());
    }
}

#[test]
fn export_listings() {
    let o = warpsim(&["export", "w", "--width", "2", "--j", "2"]);
    let gates: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(gates.len(), 5);
    let o = warpsim(&["export", "b2", "--width", "2"]);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == format!("P 1 {:?}", -std::f64::consts::FRAC_PI_2)));
    let o = warpsim(&[
        "export", "v-adv", "--a-vec", "1,-1", "--n-x", "2", "--n-p", "2", "--t", "0.1", "--r", "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("#qubits 6"));
}

#[test]
fn count_reports_formula() {
    let o = warpsim(&[
        "count", "v-heat", "--n-x", "3", "--n-p", "2", "--t", "0.1", "--r", "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cost"]["formula"], "Vheat");
    assert_eq!(v["cost"]["cnot_equivalent"], 296);
    let o = warpsim(&["count", "v0", "--width", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["native"]["multi_controlled_rz"]["2"], 1);
    assert_eq!(v["cost"]["cnot_equivalent"], 16);
    let o = warpsim(&["count", "v0", "--width", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["cost"]["cnot_equivalent"].is_null());
}
