//! Helpers shared by the CLI test targets.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }

    /// Names of the failed checks in the report.
    pub fn failed_checks(&self) -> Vec<String> {
        self.json()["checks"]
            .as_array()
            .map(|cs| {
                cs.iter()
                    .filter(|c| c["passed"] == Value::Bool(false))
                    .map(|c| c["name"].as_str().unwrap_or_default().to_string())
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Runs the binary from the fixtures directory, so relative input paths in
/// `args` name fixture files.
pub fn run(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclestab"))
        .args(args)
        .current_dir(fixture(""))
        .env_remove("CYCLESTAB_THREADS")
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("UTF-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("UTF-8 stderr"),
    }
}

/// Golden report name, the command that produced it, and the input it
/// re-verifies against.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub verify_with: &'static [&'static str],
}

pub const GOLDEN: &[GoldenCase] = &[
    GoldenCase {
        name: "thdc_two_k13_shared",
        args: &[
            "decompose-thdc",
            "--graph",
            "two_k13_shared.edges",
            "--alpha",
            "2/100",
            "--beta",
            "0",
        ],
        verify_with: &["--graph", "two_k13_shared.edges"],
    },
    GoldenCase {
        name: "thdc_two_k13_disjoint",
        args: &[
            "decompose-thdc",
            "--graph",
            "two_k13_disjoint.edges",
            "--alpha",
            "2/100",
            "--beta",
            "5/100",
        ],
        verify_with: &["--graph", "two_k13_disjoint.edges"],
    },
    GoldenCase {
        name: "cycth_two_k7_plus_edge",
        args: &[
            "decompose-cycth",
            "--graph",
            "two_k7_shared_plus_edge.edges",
            "--gamma",
            "3/10",
        ],
        verify_with: &["--graph", "two_k7_shared_plus_edge.edges"],
    },
    GoldenCase {
        name: "cycth_k25_k27",
        args: &["decompose-cycth", "--graph", "k25_k27_shared.edges", "--gamma", "1/20"],
        verify_with: &["--graph", "k25_k27_shared.edges"],
    },
    GoldenCase {
        name: "th3par_k13_13",
        args: &[
            "decompose-th3par",
            "--graph",
            "k13_13.edges",
            "--alpha",
            "4/100",
            "--beta",
            "1/100",
        ],
        verify_with: &["--graph", "k13_13.edges"],
    },
    GoldenCase {
        name: "th3par_two_k13_bridge",
        args: &[
            "decompose-th3par",
            "--graph",
            "two_k13_bridge.edges",
            "--alpha",
            "4/100",
            "--beta",
            "5/100",
        ],
        verify_with: &["--graph", "two_k13_bridge.edges"],
    },
    GoldenCase {
        name: "spectrum_petersen",
        args: &["spectrum", "--graph", "petersen.g6"],
        verify_with: &["--graph", "petersen.g6"],
    },
    GoldenCase {
        name: "le4_k44_minus_star",
        args: &["le4", "--graph", "k44_minus_star.edges"],
        verify_with: &["--graph", "k44_minus_star.edges"],
    },
    GoldenCase {
        name: "ramsey_cert_k8",
        args: &[
            "ramsey-cert",
            "--coloring",
            "k8_golden.coloring",
            "--n",
            "5",
            "--beta",
            "2/5",
        ],
        verify_with: &["--coloring", "k8_golden.coloring"],
    },
];

/// Writes `value` to a fresh temporary file and returns its path.
pub fn temp_json(dir: &tempfile::TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).expect("serializes")).expect("temp file writes");
    path
}
