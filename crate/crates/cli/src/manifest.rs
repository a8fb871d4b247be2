use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Timing {
    pub step: String,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OutputDigest {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Everything needed to rerun a command and check that it reproduced.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    /// Arguments from the subcommand name on.
    pub arguments: Vec<String>,
    /// Inputs that do not appear on the command line, such as precision
    /// picked up from the environment.
    pub constants: BTreeMap<String, String>,
    pub tool_version: String,
    pub timings: Vec<Timing>,
    pub outputs: Vec<OutputDigest>,
    pub exit_code: u8,
}

pub fn digest(name: &str, bytes: &[u8]) -> OutputDigest {
    OutputDigest { name: name.to_string(), sha256: format!("{:x}", Sha256::digest(bytes)), bytes: bytes.len() }
}
