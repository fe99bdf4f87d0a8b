//! Provenance record written next to a CLI run.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// SHA-256 of the invocation arguments followed by the input file, if any.
    pub input_digest: String,
    pub parameters: serde_json::Value,
    pub tool_version: String,
    /// SHA-256 of the bytes written to standard output.
    pub output_digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(
        command: &str,
        args: &[String],
        input: Option<&[u8]>,
        parameters: serde_json::Value,
        output: &[u8],
    ) -> Self {
        let mut h = Sha256::new();
        for a in args {
            h.update((a.len() as u64).to_le_bytes());
            h.update(a.as_bytes());
        }
        if let Some(bytes) = input {
            h.update(bytes);
        }
        RunManifest {
            command: command.to_string(),
            input_digest: hex::encode(h.finalize()),
            parameters,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            output_digest: sha256_hex(output),
        }
    }
}
