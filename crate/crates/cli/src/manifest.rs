//! Reproducibility record attached to every `--json` run.

use std::ffi::OsString;
use std::time::Duration;

use clap::{ArgMatches, Command};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Version tag of the JSON layout.
pub const SCHEMA: &str = "mahler/1";

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub command_line: Vec<String>,
    pub inputs: Vec<(String, String)>,
    pub parameters: Value,
    pub version: &'static str,
    pub wall_time: Duration,
}

/// Subcommand path and explicit argument values, in declaration order.
/// Group ids that clap's derive adds are skipped.
fn parameters(cmd: &Command, m: &ArgMatches) -> Value {
    let mut path = Vec::new();
    let mut params = Map::new();
    let (mut cmd, mut cur) = (cmd, m);
    loop {
        for id in cur.ids() {
            if !cmd.get_arguments().any(|a| a.get_id() == id) {
                continue;
            }
            if let Some(raw) = cur.get_raw(id.as_str()) {
                let vals: Vec<Value> = raw.map(|v| Value::String(v.to_string_lossy().into_owned())).collect();
                let v = if vals.len() == 1 { vals.into_iter().next().unwrap() } else { Value::Array(vals) };
                params.insert(id.as_str().to_owned(), v);
            }
        }
        match cur.subcommand() {
            Some((name, sub)) => {
                path.push(Value::String(name.to_owned()));
                cmd = cmd.find_subcommand(name).expect("matched subcommand");
                cur = sub;
            }
            None => break,
        }
    }
    json!({ "subcommand": path, "arguments": params })
}

impl Manifest {
    pub fn new(argv: &[OsString], inputs: &[(String, String)], cmd: &Command, m: &ArgMatches, wall_time: Duration) -> Self {
        Manifest {
            command_line: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
            inputs: inputs.to_vec(),
            parameters: parameters(cmd, m),
            version: env!("CARGO_PKG_VERSION"),
            wall_time,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command_line": self.command_line,
            "inputs": self.inputs.iter().map(|(p, d)| json!({ "path": p, "sha256": d })).collect::<Vec<_>>(),
            "parameters": self.parameters,
            "version": self.version,
            "wall_time_ms": self.wall_time.as_secs_f64() * 1e3,
        })
    }
}
