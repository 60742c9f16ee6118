use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub code_version: String,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    /// Claim ids checked by this run, if any.
    pub provenance: Option<Value>,
    pub timing: Timing,
}

/// Everything that may differ between runs of the same command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_seconds: f64,
    pub workers: Option<usize>,
}

impl ResultRecord {
    pub fn new(command: &str, inputs: Value, outputs: Value) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            code_version: CODE_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            outputs,
            provenance: None,
            timing: Timing {
                elapsed_seconds: 0.0,
                workers: None,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }
}

/// Content-addressed store of serialized records, keyed by command, inputs and code version.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn key(command: &str, inputs: &Value) -> String {
        let mut h = Sha256::new();
        h.update(format!("eml {CODE_VERSION} schema {SCHEMA_VERSION}\n{command}\n"));
        h.update(serde_json::to_string(inputs).expect("inputs serialize"));
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stored bytes and record for `key`; corrupt or foreign entries are removed.
    pub fn get(&self, key: &str, command: &str, inputs: &Value) -> Option<(String, ResultRecord)> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<ResultRecord>(&text) {
            Ok(r) if r.code_version == CODE_VERSION && r.command == command && &r.inputs == inputs => {
                Some((text, r))
            }
            _ => {
                eprintln!("warning: discarding corrupt cache entry {}", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn put(&self, key: &str, bytes: &str) -> anyhow::Result<()> {
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, bytes)?;
        fs::rename(tmp, self.path(key))?;
        Ok(())
    }
}
