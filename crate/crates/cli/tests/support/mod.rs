//! Helpers shared by the golden tests and the acceptance run.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn data(name: &str) -> String {
    crate_dir()
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

pub fn ssot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssot"))
        .args(args)
        .env_remove("SSOT_THREADS")
        .output()
        .expect("binary runs")
}

pub fn ssot_ok(args: &[&str]) -> String {
    let out = ssot(args);
    assert!(
        out.status.success(),
        "ssot {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

pub struct Case {
    pub file: &'static str,
    pub args: Vec<String>,
}

pub fn cases() -> Vec<Case> {
    let case = |file, args: &[&str]| Case {
        file,
        args: args.iter().map(|s| s.to_string()).collect(),
    };
    vec![
        case(
            "qubit_engine_point.json",
            &[
                "qubit-engine",
                "--w1",
                "5",
                "--w2",
                "1",
                "--thot",
                "2",
                "--tcold",
                "1",
            ],
        ),
        case(
            "qubit_engine_w1_sweep.csv",
            &[
                "qubit-engine",
                "--w1",
                "0.1:50:100",
                "--w2",
                "5",
                "--thot",
                "2",
                "--tcold",
                "1",
                "--format",
                "csv",
            ],
        ),
        case(
            "qubit_engine_grid.json",
            &[
                "qubit-engine",
                "--w1",
                "2:8:3",
                "--w2",
                "0.5:1:2",
                "--thot",
                "2:3:2",
                "--format",
                "json",
            ],
        ),
        case(
            "noneq_cycle.json",
            &[
                "noneq-cycle",
                "--energies",
                "0,1,2",
                "--degeneracies",
                "1,2,1",
                "--u",
                "0,1",
            ],
        ),
        case(
            "noneq_cycle.csv",
            &[
                "noneq-cycle",
                "--energies",
                "-1,0.5,2",
                "--degeneracies",
                "2,1,3",
                "--u",
                "0",
                "--v",
                "0,1",
                "--thot",
                "3",
                "--tcold",
                "0.5",
                "--format",
                "csv",
            ],
        ),
        case(
            "fluct_sweep.csv",
            &["fluct-sweep", "--w1", "5", "--w2", "1"],
        ),
        case(
            "fluct_sweep.json",
            &[
                "fluct-sweep",
                "--delta-w",
                "0:1:3",
                "--levels",
                "21",
                "--format",
                "json",
            ],
        ),
        case("manybody_scan.csv", &["manybody-scan"]),
        case(
            "refrigerator.json",
            &["refrigerator", "--w1", "5", "--w2", "1"],
        ),
        case(
            "refrigerator_noneq.csv",
            &[
                "refrigerator",
                "--energies",
                "0,1,2",
                "--degeneracies",
                "1,2,1",
                "--u",
                "0,1",
                "--format",
                "csv",
            ],
        ),
        case(
            "check_state_restricted.json",
            &[
                "check-state",
                "--in",
                "@restricted_thermal.json",
                "--temp",
                "1",
            ],
        ),
        case(
            "check_state_excited.csv",
            &[
                "check-state",
                "--in",
                "@qubit_excited.json",
                "--temp",
                "0.5",
                "--format",
                "csv",
            ],
        ),
    ]
}

pub fn resolve(args: &[String]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => data(name),
            None => a.clone(),
        })
        .collect()
}

pub fn golden_path(file: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(file)
}

pub fn read_golden(file: &str) -> String {
    std::fs::read_to_string(golden_path(file))
        .unwrap_or_else(|e| panic!("missing golden file {file}: {e}"))
}

pub fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

pub fn column(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}
