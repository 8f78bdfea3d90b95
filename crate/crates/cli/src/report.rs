//! The machine-readable record of one invocation.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use tanaka_core::catalog::Origin;

use crate::commands::Run;

/// Identical inputs give a byte-identical report: the digest covers the
/// arguments and any input file, and the engine is deterministic.
#[derive(Debug, Serialize)]
pub struct RunReport<'a> {
    pub command: &'a str,
    pub inputs_digest: String,
    pub results: &'a Value,
    pub provenance: &'a BTreeMap<String, Origin>,
    pub exit_status: u8,
}

impl<'a> RunReport<'a> {
    pub fn new(command: &'a str, argv: &[String], run: &'a Run, exit_status: u8) -> Self {
        RunReport { command, inputs_digest: digest(argv, &run.input_bytes), results: &run.outcome.results, provenance: &run.provenance, exit_status }
    }
}

pub fn digest(argv: &[String], input: &[u8]) -> String {
    let mut h = Sha256::new();
    for a in argv.iter().filter(|a| a.as_str() != "--json") {
        h.update(a.as_bytes());
        h.update([0]);
    }
    h.update([1]);
    h.update(input);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
