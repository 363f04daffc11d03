//! The JSON envelope every subcommand prints, and its CSV flattening.

use std::collections::BTreeMap;

use cyclestab_core::NamedCheck;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: String,
    pub status: String,
    /// Input name to `sha256:<hex>` of the file bytes.
    pub input_digest: BTreeMap<String, String>,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
    pub checks: Vec<NamedCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall seconds, present only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<f64>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn to_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// `path,value` rows, one per scalar leaf, in key order.
pub fn to_csv(report: &RunReport) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut out = String::from("path,value\n");
    for (path, v) in rows {
        out.push_str(&format!("{},{}\n", quote(&path), quote(&v)));
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, rows);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Null => rows.push((prefix.to_string(), String::new())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
