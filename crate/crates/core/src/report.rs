//! Run reports shared by the command-line tool and the bindings.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::linalg::{max_bits_seen, reset_bit_stats, Field};

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub verb: String,
    pub inputs: Vec<String>,
    pub field: String,
    pub result: Value,
    /// Largest integer bit-size met during rational elimination.
    pub max_bit_size: u64,
    pub wall_ms: f64,
}

/// Times `f`, resetting the bit-size statistics first.
pub fn run_reported<T, E>(
    verb: &str,
    inputs: Vec<String>,
    field: Field,
    f: impl FnOnce() -> Result<(T, Value), E>,
) -> Result<(T, RunReport), E> {
    reset_bit_stats();
    let start = Instant::now();
    let (out, result) = f()?;
    let report = RunReport {
        verb: verb.to_string(),
        inputs,
        field: field.to_string(),
        result,
        max_bit_size: max_bits_seen(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((out, report))
}
