//! Machine-readable reports for the command-line front end.
//!
//! Every subcommand prints exactly one [`Report`] as JSON on standard
//! output.  Reports are deterministic: struct fields are declared in
//! alphabetical order and nested objects go through `serde_json`'s
//! sorted map type, so identical inputs produce byte-identical output.
//! Rationals are always rendered as `"p/q"` strings, never floats.

use serde::Serialize;
use serde_json::Value;

use crate::ENGINE_VERSION;

/// Overall outcome of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The computation succeeded and every checked identity held.
    Ok,
    /// At least one checked identity failed; details sit in `result`.
    Violations,
}

/// The single JSON document a subcommand emits.
///
/// Fields are declared alphabetically so the serialized key order is
/// stable without any post-processing.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Name of the algebra the command operated on (`"svt"` when the
    /// command is algebra-independent but tied to the extended
    /// Schrödinger–Virasoro relations).
    pub algebra: String,
    /// The subcommand name as typed on the command line.
    pub command: String,
    /// Library version, for provenance in archived reports.
    pub engine_version: String,
    /// Command-specific payload: dimensions, basis strings, violation
    /// records, images of elements, and so on.
    pub result: Value,
    /// Whether every checked identity held.
    pub status: Status,
    /// Window scale `K` used, or `0` for window-free commands.
    pub window: i64,
}

impl Report {
    /// Build a report; `status` defaults to [`Status::Ok`].
    pub fn new(command: &str, algebra: &str, window: i64, result: Value) -> Self {
        Report {
            algebra: algebra.to_string(),
            command: command.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
            result,
            status: Status::Ok,
            window,
        }
    }

    /// Mark the report as having found violations.
    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// Render the report as pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The process exit code the contract assigns to this status.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Violations => 1,
        }
    }
}
