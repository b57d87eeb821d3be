//! Command-line front end: argument parsing, file I/O, JSON manifests and
//! exit codes. Every subcommand is a thin wrapper over `mahler_core`.

pub mod commands;
pub mod formats;
mod manifest;

use std::fmt;
use std::path::Path;
use std::time::Instant;

use clap::{CommandFactory, FromArgMatches};
use serde_json::{json, Value};

pub use commands::Cli;
pub use manifest::{Manifest, SCHEMA};

/// Exit code for an affirmative result.
pub const EXIT_YES: i32 = 0;
/// Exit code for a negative or inconclusive result.
pub const EXIT_NO: i32 = 1;
/// Exit code for malformed input or usage.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(pub String);

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }

    pub fn core(e: mahler_core::Error) -> Self {
        CliError(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<mahler_core::Error> for CliError {
    fn from(e: mahler_core::Error) -> Self {
        CliError::core(e)
    }
}

/// What a subcommand produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    /// Human-readable summary.
    pub text: String,
    /// Machine-readable result.
    pub json: Value,
    /// File content (SERIES, MAHLER, DFAO, LINREP) written to `--out` or
    /// printed after the summary.
    pub artifact: Option<String>,
    /// Rows for `--csv`, header first.
    pub csv: Option<Vec<Vec<String>>>,
}

impl Outcome {
    pub fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        Outcome { code, text: text.into(), json, artifact: None, csv: None }
    }

    pub fn yes(text: impl Into<String>, json: Value) -> Self {
        Outcome::new(EXIT_YES, text, json)
    }

    pub fn with_artifact(mut self, a: String) -> Self {
        self.artifact = Some(a);
        self
    }

    pub fn with_csv(mut self, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some(rows);
        self
    }
}

/// Reads input files and remembers their digests for the manifest.
#[derive(Default)]
pub struct Ctx {
    inputs: Vec<(String, String)>,
}

impl Ctx {
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        self.inputs.push((path.display().to_string(), manifest::sha256_hex(&bytes)));
        String::from_utf8(bytes).map_err(|_| CliError::input(format!("{}: not UTF-8", path.display())))
    }
}

/// Everything a run printed, for tests and for `main`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let start = Instant::now();
    let matches = match Cli::command().try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                RunResult { code, stdout: String::new(), stderr: rendered }
            } else {
                RunResult { code, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return RunResult { code: EXIT_INPUT, stdout: String::new(), stderr: e.to_string() },
    };
    let mut ctx = Ctx::default();
    let result = commands::dispatch(&cli, &mut ctx);
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            return RunResult { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let mut artifact_inline = outcome.artifact.clone();
    if let (Some(path), Some(a)) = (&cli.out, &outcome.artifact) {
        if let Err(e) = std::fs::write(path, a) {
            return RunResult {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
            };
        }
        stderr.push_str(&format!("wrote {}\n", path.display()));
        artifact_inline = None;
    }
    if cli.json {
        let manifest = Manifest::new(&argv, &ctx.inputs, &Cli::command(), &matches, start.elapsed());
        let mut doc = json!({
            "schema": SCHEMA,
            "exit_code": outcome.code,
            "result": outcome.json,
            "manifest": manifest.to_json(),
        });
        if let Some(a) = &artifact_inline {
            doc["artifact"] = Value::String(a.clone());
        }
        stdout.push_str(&serde_json::to_string_pretty(&doc).expect("serializable"));
        stdout.push('\n');
    } else if cli.csv {
        match &outcome.csv {
            Some(rows) => {
                for r in rows {
                    stdout.push_str(&r.join(","));
                    stdout.push('\n');
                }
            }
            None => {
                return RunResult {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: "error: this command has no CSV output\n".into(),
                }
            }
        }
    } else {
        stdout.push_str(&outcome.text);
        if !outcome.text.ends_with('\n') && !outcome.text.is_empty() {
            stdout.push('\n');
        }
        if let Some(a) = &artifact_inline {
            stdout.push_str(a);
        }
    }
    RunResult { code: outcome.code, stdout, stderr }
}

/// Writes a run's output to the process streams and returns its exit code.
pub fn main_with_args() -> i32 {
    let r = run(std::env::args_os());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    r.code
}
