//! The JSON envelope every subcommand shares.
//!
//! Keys are emitted in sorted order and nothing run-dependent is included
//! unless `--timings` asks for it, so identical invocations print identical
//! bytes. The full schema is documented in the repository README.

use serde_json::{json, Value};

/// Prints one stdout line, treating a closed pipe (e.g. `| head`) as a
/// normal early exit rather than an error.
pub fn out_line(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("snarkforge: stdout: {e}");
        std::process::exit(2);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { $crate::report::out_line(&format!($($t)*)) };
}
pub(crate) use outln;

pub struct Envelope {
    command: &'static str,
    input_digest: Option<String>,
    started: std::time::Instant,
    timings: bool,
}

impl Envelope {
    pub fn new(command: &'static str, input_digest: Option<String>, timings: bool) -> Self {
        Envelope { command, input_digest, started: std::time::Instant::now(), timings }
    }

    /// Wraps per-item results and prints the report to stdout.
    pub fn print(self, results: Vec<Value>) {
        let mut report = json!({
            "tool": "snarkforge",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input_digest": self.input_digest,
            "results": results,
        });
        if self.timings {
            report["elapsed_ms"] = json!(self.started.elapsed().as_secs_f64() * 1e3);
        }
        out_line(&serde_json::to_string_pretty(&report).expect("report serializes"));
    }
}

/// Renders a vertex path/cycle/matching as a JSON array.
pub fn vertex_list(vs: &[u32]) -> Value {
    Value::Array(vs.iter().map(|&v| json!(v)).collect())
}

/// Renders edge ids as `[u, v]` endpoint pairs, the stable external form.
pub fn edge_list(g: &snarkforge::CubicGraph, es: &[u32]) -> Value {
    Value::Array(
        es.iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                json!([u, v])
            })
            .collect(),
    )
}
