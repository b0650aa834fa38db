use std::path::Path;

use ncgabor::checks::CheckResult;
use ncgabor::random::RNG_ALGORITHM;
use ncgabor::{io, Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

/// Common envelope: config and tolerance are always embedded, and the
/// failing invariants are named.
#[derive(Debug, Serialize)]
pub struct RunReport<C: Serialize, D: Serialize> {
    pub command: &'static str,
    pub config: C,
    pub tolerance: f64,
    pub rng: &'static str,
    pub pass: bool,
    pub failures: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub details: D,
}

impl<C: Serialize, D: Serialize> RunReport<C, D> {
    pub fn new(command: &'static str, config: C, tolerance: f64, checks: Vec<CheckResult>, details: D) -> Self {
        let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        Self {
            command,
            config,
            tolerance,
            rng: RNG_ALGORITHM,
            pass: failures.is_empty(),
            failures,
            checks,
            details,
        }
    }

    pub fn write(&self, dir: &Path, name: &str) -> Result<()> {
        io::write_json(&dir.join(name), self)
    }

    pub fn summarize(&self) {
        for c in &self.checks {
            emit(&format!(
                "{} {:<32} deviation {:.3e} (tolerance {:.1e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.deviation,
                c.tolerance
            ));
        }
    }
}

/// Print a line, ignoring a closed stdout (e.g. piped into `head`).
pub fn emit(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

pub fn error_record(e: &Error) -> Value {
    let kind = match e {
        Error::Io(_) => "io",
        Error::Json(_) | Error::Malformed(_) => "parse",
        Error::InvalidParameter(_) | Error::UnknownGroup(_) | Error::NotPrime(_) | Error::UnknownSeries(_) => "usage",
        _ => "input",
    };
    json!({ "error": e.to_string(), "kind": kind })
}
