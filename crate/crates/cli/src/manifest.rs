//! Run manifests: the argument vector, seed, tool version and input digests
//! that reproduce an output directory.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Flags that only affect where or how fast a run happens.
const EXCLUDED: [&str; 2] = ["--out-dir", "--threads"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub command: String,
    pub args: Vec<String>,
    pub seed: u64,
    /// Input path as given → sha256 of its contents.
    pub inputs: BTreeMap<String, String>,
    #[serde(default)]
    pub hash: String,
}

impl Manifest {
    pub fn new(command: &str, args: Vec<String>, seed: u64, inputs: BTreeMap<String, String>) -> Self {
        let mut m = Manifest {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            args,
            seed,
            inputs,
            hash: String::new(),
        };
        m.hash = m.compute_hash();
        m
    }

    pub fn compute_hash(&self) -> String {
        let mut bare = self.clone();
        bare.hash.clear();
        let bytes = serde_json::to_vec(&bare).expect("manifest serialises");
        hex::encode(Sha256::digest(&bytes))
    }
}

pub fn sha256_file(path: &Path) -> std::io::Result<String> {
    Ok(hex::encode(Sha256::digest(std::fs::read(path)?)))
}

/// Drops `--out-dir`/`--threads` (both `--flag v` and `--flag=v` forms).
pub fn strip_run_location(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if EXCLUDED.contains(&a.as_str()) {
            skip = true;
            continue;
        }
        if EXCLUDED.iter().any(|f| a.starts_with(&format!("{f}="))) {
            continue;
        }
        out.push(a.clone());
    }
    out
}
