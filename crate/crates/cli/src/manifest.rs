//! Run manifests: what was run, on which inputs, producing which outputs.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileDigest {
    /// Inputs: as given on the command line. Outputs: relative to `--out`.
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    /// Arguments after the program name, without `--out`.
    pub command: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub inputs: Vec<FileDigest>,
    pub version: String,
    pub wall_clock_ms: u64,
    pub outputs: Vec<FileDigest>,
}

pub fn sha256_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    Ok(sha256_bytes(&bytes))
}

/// `--key value` pairs and bare `--flag`s of an argument list.
pub fn params_of(args: &[String]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        if let Some(key) = args[i].strip_prefix("--") {
            if let Some((k, v)) = key.split_once('=') {
                out.insert(k.to_string(), v.to_string());
            } else if i + 1 < args.len() && !args[i + 1].starts_with("--") {
                out.insert(key.to_string(), args[i + 1].clone());
                i += 1;
            } else {
                out.insert(key.to_string(), "true".to_string());
            }
        }
        i += 1;
    }
    out
}

fn digests(v: &Value) -> Option<Vec<FileDigest>> {
    v.as_array()?
        .iter()
        .map(|e| Some(FileDigest { path: e["path"].as_str()?.to_string(), sha256: e["sha256"].as_str()?.to_string() }))
        .collect()
}

impl RunManifest {
    pub fn to_json(&self) -> Value {
        let files = |f: &[FileDigest]| f.iter().map(|d| json!({"path": d.path, "sha256": d.sha256})).collect::<Vec<_>>();
        json!({
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "inputs": files(&self.inputs),
            "version": self.version,
            "wall_clock_ms": self.wall_clock_ms,
            "outputs": files(&self.outputs),
        })
    }

    pub fn from_json(v: &Value, path: &Path) -> Result<RunManifest> {
        let bad = |what: &str| CliError::format(path, format!("manifest field {what:?} missing or malformed"));
        let command = v["command"]
            .as_array()
            .and_then(|a| a.iter().map(|s| s.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| bad("command"))?;
        let params = v["params"]
            .as_object()
            .and_then(|m| m.iter().map(|(k, v)| Some((k.clone(), v.as_str()?.to_string()))).collect::<Option<BTreeMap<_, _>>>())
            .ok_or_else(|| bad("params"))?;
        Ok(RunManifest {
            command,
            params,
            seed: v["seed"].as_u64().ok_or_else(|| bad("seed"))?,
            inputs: digests(&v["inputs"]).ok_or_else(|| bad("inputs"))?,
            version: v["version"].as_str().ok_or_else(|| bad("version"))?.to_string(),
            wall_clock_ms: v["wall_clock_ms"].as_u64().unwrap_or(0),
            outputs: digests(&v["outputs"]).ok_or_else(|| bad("outputs"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parsing() {
        let args: Vec<String> = ["partition", "cones", "--k", "5", "--audit", "--q=0,0"].iter().map(|s| s.to_string()).collect();
        let p = params_of(&args);
        assert_eq!(p["k"], "5");
        assert_eq!(p["audit"], "true");
        assert_eq!(p["q"], "0,0");
    }

    #[test]
    fn json_round_trip() {
        let m = RunManifest {
            command: vec!["depth".into()],
            params: BTreeMap::new(),
            seed: 7,
            inputs: vec![FileDigest { path: "p.csv".into(), sha256: sha256_bytes(b"x") }],
            version: "0.1.0".into(),
            wall_clock_ms: 3,
            outputs: vec![],
        };
        assert_eq!(RunManifest::from_json(&m.to_json(), Path::new("m.json")).unwrap(), m);
    }
}
