//! Run manifests and input hashing.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn hash_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(sha256_hex(&bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub input_hashes: BTreeMap<String, String>,
    pub tool_version: String,
    /// Milliseconds since the Unix epoch when the run started.
    pub started_ms: u64,
    pub wall_time_ms: u64,
    /// SHA-256 of the certificate bytes.
    pub result_digest: String,
}

/// Wall clock for one run.
pub struct RunClock {
    started_ms: u64,
    start: Instant,
}

impl RunClock {
    pub fn start() -> Self {
        let started_ms = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64);
        RunClock { started_ms, start: Instant::now() }
    }

    pub fn finish(
        &self,
        command_line: Vec<String>,
        seed: Option<u64>,
        input_hashes: BTreeMap<String, String>,
        certificate: &[u8],
    ) -> RunManifest {
        RunManifest {
            command_line,
            seed,
            input_hashes,
            tool_version: TOOL_VERSION.into(),
            started_ms: self.started_ms,
            wall_time_ms: self.start.elapsed().as_millis() as u64,
            result_digest: sha256_hex(certificate),
        }
    }
}

/// Monotonic milliseconds, for search time limits.
pub fn monotonic_ms() -> u64 {
    use std::sync::OnceLock;
    static ORIGIN: OnceLock<Instant> = OnceLock::new();
    ORIGIN.get_or_init(Instant::now).elapsed().as_millis() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
