mod construct;
mod heights;
mod manifest;
mod nagao;
mod transform;
mod wire;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use manifest::{digest, RunManifest, Timing};

const PRECISION_ENV: &str = "ELLSURF_PRECISION_BITS";

#[derive(Parser, Debug)]
#[command(
    name = "ellsurf",
    version,
    about = "Elliptic surfaces over Q(T): constructions, Nagao sums, transforms and height checks"
)]
struct Cli {
    /// Write outputs and manifest.json into this directory instead of stdout/stderr.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Where to write the run manifest when --out-dir is not given (default: stderr).
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the rank 6 family from six roots, or load a catalog curve.
    Construct(construct::ConstructArgs),
    /// Per-prime Nagao sums A_E(p) as a CSV ledger, with a JSON summary.
    Nagao(nagao::NagaoArgs),
    /// Height pairing matrix, regulator and independence verdict.
    Heights(heights::HeightsArgs),
    /// Quartic-to-cubic maps and minimal models, with round-trip checks.
    Transform(transform::TransformArgs),
    /// Rerun the command recorded in a manifest and compare output digests.
    Replay {
        #[arg(value_name = "MANIFEST")]
        manifest: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct(_) => "construct",
            Command::Nagao(_) => "nagao",
            Command::Heights(_) => "heights",
            Command::Transform(_) => "transform",
            Command::Replay { .. } => "replay",
        }
    }
}

pub struct Output {
    pub name: String,
    pub bytes: Vec<u8>,
}

/// What a command produced. `failure` is set when the command ran but a
/// check it performs did not hold; that maps to exit code 1.
#[derive(Default)]
pub struct Run {
    pub outputs: Vec<Output>,
    pub timings: Vec<Timing>,
    pub constants: BTreeMap<String, String>,
    pub failure: Option<String>,
}

impl Run {
    pub fn timed<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing { step: step.to_string(), millis: start.elapsed().as_secs_f64() * 1e3 });
        out
    }

    pub fn json(&mut self, name: &str, v: &Value) {
        let mut bytes = serde_json::to_vec_pretty(v).expect("serializable");
        bytes.push(b'\n');
        self.outputs.push(Output { name: name.to_string(), bytes });
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failure.get_or_insert(msg.into());
    }
}

/// Arguments from the subcommand on, skipping the output-routing options.
fn command_arguments(argv: &[String]) -> Vec<String> {
    let mut i = 1;
    while i < argv.len() {
        let a = &argv[i];
        if ["--out-dir", "--manifest", "--jobs"].contains(&a.as_str()) {
            i += 2;
        } else if a.starts_with("--") {
            i += 1;
        } else {
            break;
        }
    }
    argv[i.min(argv.len())..].to_vec()
}

fn execute(command: &Command) -> Result<Run> {
    let mut run = Run::default();
    match command {
        Command::Construct(a) => construct::run(a, &mut run)?,
        Command::Nagao(a) => nagao::run(a, &mut run)?,
        Command::Heights(a) => heights::run(a, &mut run)?,
        Command::Transform(a) => transform::run(a, &mut run)?,
        Command::Replay { manifest } => replay(manifest, &mut run)?,
    }
    Ok(run)
}

fn replay(path: &Path, run: &mut Run) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let recorded: RunManifest = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(bits) = recorded.constants.get("precision_bits") {
        std::env::set_var(PRECISION_ENV, bits);
    }
    let argv = std::iter::once("ellsurf".to_string()).chain(recorded.arguments.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| anyhow!("recorded arguments no longer parse: {e}"))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(anyhow!("a replay manifest cannot be replayed"));
    }
    let again = run.timed("rerun", || execute(&cli.command))?;
    let fresh: Vec<_> = again.outputs.iter().map(|o| digest(&o.name, &o.bytes)).collect();
    let same = fresh == recorded.outputs;
    let rows: Vec<Value> = recorded
        .outputs
        .iter()
        .map(|r| {
            let now = fresh.iter().find(|f| f.name == r.name);
            json!({ "name": r.name, "recorded": r.sha256, "replayed": now.map(|f| f.sha256.clone()), "same": now == Some(r) })
        })
        .collect();
    run.json(
        "replay.json",
        &json!({
            "manifest": path.display().to_string(),
            "command": recorded.command,
            "tool_version": { "recorded": recorded.tool_version, "current": env!("CARGO_PKG_VERSION") },
            "identical": same,
            "outputs": rows,
        }),
    );
    if !same {
        run.fail("replayed outputs differ from the recorded digests");
    }
    Ok(())
}

fn emit(cli: &Cli, argv: &[String], run: &Run, code: u8) -> Result<()> {
    let manifest = RunManifest {
        command: cli.command.name().to_string(),
        arguments: command_arguments(argv),
        constants: run.constants.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timings: run.timings.clone(),
        outputs: run.outputs.iter().map(|o| digest(&o.name, &o.bytes)).collect(),
        exit_code: code,
    };
    let mut manifest_bytes = serde_json::to_vec_pretty(&manifest)?;
    manifest_bytes.push(b'\n');
    if let Some(dir) = &cli.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for o in &run.outputs {
            fs::write(dir.join(&o.name), &o.bytes).with_context(|| format!("writing {}", o.name))?;
        }
        fs::write(dir.join("manifest.json"), &manifest_bytes)?;
        return Ok(());
    }
    // Primary output on stdout; anything else, and the manifest, on stderr.
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    for (i, o) in run.outputs.iter().enumerate() {
        if i == 0 {
            stdout.write_all(&o.bytes)?;
        } else {
            stderr.write_all(&o.bytes)?;
        }
    }
    match &cli.manifest {
        Some(path) => fs::write(path, &manifest_bytes).with_context(|| format!("writing {}", path.display()))?,
        None => stderr.write_all(&manifest_bytes)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let run = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let code = if run.failure.is_some() { 1 } else { 0 };
    if let Err(e) = emit(&cli, &argv, &run, code) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if let Some(msg) = &run.failure {
        eprintln!("verification failed: {msg}");
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn routing_options_are_dropped() {
        let argv = strs(&["ellsurf", "--out-dir", "o", "--jobs", "2", "nagao", "--pmax", "10"]);
        assert_eq!(command_arguments(&argv), strs(&["nagao", "--pmax", "10"]));
    }
}
