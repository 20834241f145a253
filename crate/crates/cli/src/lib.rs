//! Command-line front end for `geoverlap`: file formats, SVG output, run
//! manifests and subcommand dispatch.

pub mod commands;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;

pub use error::{CliError, Result};
use manifest::{params_of, sha256_bytes, sha256_file, FileDigest, RunManifest};

/// Result of a subcommand before it is written anywhere.
pub struct Outcome {
    pub json: serde_json::Value,
    pub csv: Option<String>,
    pub svg: Option<String>,
    /// Honest "unknown" or "unfalsified" result; exit code 3.
    pub unknown: bool,
}

impl Outcome {
    pub fn json(json: serde_json::Value) -> Outcome {
        Outcome { json, csv: None, svg: None, unknown: false }
    }
}

/// Resolves input paths and records their digests.
pub struct Context {
    base: PathBuf,
    inputs: std::cell::RefCell<Vec<FileDigest>>,
}

impl Context {
    pub fn new(base: impl Into<PathBuf>) -> Context {
        Context { base: base.into(), inputs: Default::default() }
    }

    /// Path of an input file, registered for the manifest.
    pub fn input(&self, path: &Path) -> Result<PathBuf> {
        let full = if path.is_absolute() { path.to_path_buf() } else { self.base.join(path) };
        let sha256 = sha256_file(&full)?;
        let mut inputs = self.inputs.borrow_mut();
        let path = path.to_string_lossy().into_owned();
        if !inputs.iter().any(|d| d.path == path) {
            inputs.push(FileDigest { path, sha256 });
        }
        Ok(full)
    }
}

fn strip_out(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--out" {
            skip = true;
        } else if !a.starts_with("--out=") {
            out.push(a.clone());
        }
    }
    out
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Runs `args` (without the program name) with inputs resolved against
/// `base`, writing to `out` when given. Returns the exit code and manifest.
pub fn execute(args: &[String], base: &Path, out: Option<&Path>) -> Result<(i32, Option<RunManifest>)> {
    let started = Instant::now();
    let cli = match commands::Cli::try_parse_from(std::iter::once("geoverlap".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok((0, None));
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    if let commands::Command::Replay(r) = &cli.command {
        return replay(&r.manifest, r.out.as_deref().or(out)).map(|code| (code, None));
    }
    let ctx = Context::new(base);
    let format = cli.global.format;
    let outcome = commands::dispatch(&cli, &ctx)?;
    let (name, body) = match format {
        commands::Format::Json => ("result.json", serde_json::to_string_pretty(&outcome.json).expect("json") + "\n"),
        commands::Format::Csv => ("result.csv", outcome.csv.ok_or_else(|| CliError::Usage("this command has no CSV output".into()))?),
        commands::Format::Svg => ("result.svg", outcome.svg.ok_or_else(|| CliError::Usage("this command has no SVG output".into()))?),
    };
    let code = if outcome.unknown { 3 } else { 0 };
    let Some(dir) = out.or(cli.global.out.as_deref()) else {
        print!("{body}");
        return Ok((code, None));
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let target = dir.join(name);
    std::fs::write(&target, &body).map_err(io(&target))?;
    let command = strip_out(args);
    let manifest = RunManifest {
        params: params_of(&command),
        command,
        seed: cli.global.seed,
        inputs: ctx.inputs.into_inner(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_clock_ms: started.elapsed().as_millis() as u64,
        outputs: vec![FileDigest { path: name.to_string(), sha256: sha256_bytes(body.as_bytes()) }],
    };
    let mpath = dir.join("manifest.json");
    std::fs::write(&mpath, serde_json::to_string_pretty(&manifest.to_json()).expect("json") + "\n").map_err(io(&mpath))?;
    Ok((code, Some(manifest)))
}

/// Re-runs a manifest with inputs resolved next to it and compares output
/// digests. Inputs that changed since the recorded run are an error.
pub fn replay(manifest_path: &Path, out: Option<&Path>) -> Result<i32> {
    let text = formats::read_text(manifest_path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::format(manifest_path, e.to_string()))?;
    let recorded = RunManifest::from_json(&value, manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    for input in &recorded.inputs {
        let p = base.join(&input.path);
        if sha256_file(&p)? != input.sha256 {
            return Err(CliError::Mismatch(format!("input {} changed since the recorded run", input.path)));
        }
    }
    let scratch;
    let dir = match out {
        Some(d) => d,
        None => {
            scratch = std::env::temp_dir().join(format!("geoverlap-replay-{}", std::process::id()));
            &scratch
        }
    };
    let (code, fresh) = execute(&recorded.command, base, Some(dir))?;
    let fresh = fresh.ok_or_else(|| CliError::Mismatch("replayed command wrote no manifest".into()))?;
    if fresh.outputs != recorded.outputs {
        return Err(CliError::Mismatch(format!("outputs differ from the recorded run (written to {})", dir.display())));
    }
    eprintln!("replay ok: {} output(s) identical", fresh.outputs.len());
    Ok(code)
}

/// Entry point used by the binary.
pub fn run<I: IntoIterator<Item = OsString>>(argv: I) -> i32 {
    let args: Vec<String> = argv.into_iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&args, Path::new("."), None) {
        Ok((code, _)) => code,
        Err(CliError::Usage(msg)) => {
            eprint!("{msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
