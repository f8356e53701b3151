//! Command-line front end: argument parsing, report emission and run manifests.

pub mod args;
pub mod commands;
pub mod manifest;
pub mod report;

use anyhow::{bail, Result};
use args::{Cli, Command};
use clap::error::ErrorKind;
use clap::Parser;
use commands::RunContext;
use manifest::{strip_manifest_flag, InputDigest, RunManifest, VERSION};
use report::{Report, Verdict};
use serde_json::json;
use std::io::Write;
use std::time::Instant;

/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 1;

/// Runs one invocation. `argv` excludes the program name.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(std::iter::once("divlab".to_string()).chain(argv.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok((report, ctx)) => {
            let body = match &ctx.raw_output {
                Some(raw) => raw.clone(),
                None if cli.json => report.to_json(),
                None => report.to_text(),
            };
            if out.write_all(body.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            let code = report.verdict.exit_code();
            if let Some(path) = &cli.manifest {
                if let Err(e) = record_manifest(path, argv, &report, &ctx, code) {
                    let _ = writeln!(err, "error: {e:#}");
                    return EXIT_USAGE;
                }
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<(Report, RunContext)> {
    let start = Instant::now();
    let mut ctx = RunContext::default();
    let mut report = match &cli.command {
        Command::Construct(a) => commands::construct(a, &mut ctx)?,
        Command::Measure(a) => commands::measure(a, &mut ctx)?,
        Command::Verify(a) => commands::verify(a, &mut ctx)?,
        Command::Search(a) => commands::search(a, &mut ctx)?,
        Command::Stability(a) => commands::stability(a, &mut ctx)?,
        Command::Lemma(a) => commands::lemma(a, &mut ctx)?,
        Command::Sweep(a) => commands::sweep(a, &mut ctx)?,
        Command::Replay(a) => replay(&a.manifest, &mut ctx)?,
    };
    report.elapsed_ms = if cli.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    Ok((report, ctx))
}

fn record_manifest(path: &std::path::Path, argv: &[String], report: &Report, ctx: &RunContext, code: i32) -> Result<()> {
    let inputs = ctx.inputs.iter().map(|p| InputDigest::of(p)).collect::<Result<Vec<_>>>()?;
    RunManifest {
        command_line: strip_manifest_flag(argv),
        version: VERSION.to_string(),
        inputs,
        seed: ctx.seed,
        workers: ctx.workers,
        elapsed_ms: report.elapsed_ms,
        verdict: report.verdict,
        exit_code: code,
        result_sha256: report.result_digest(),
    }
    .write(path)
}

fn replay(path: &std::path::Path, ctx: &mut RunContext) -> Result<Report> {
    ctx.inputs.push(path.to_path_buf());
    let m = RunManifest::read(path)?;
    if m.version != VERSION {
        bail!("manifest was recorded by version {}, this is {VERSION}", m.version);
    }
    for input in &m.inputs {
        let now = InputDigest::of(&input.path)?;
        if now.sha256 != input.sha256 {
            bail!("input {} changed since the manifest was recorded", input.path.display());
        }
    }
    let inner = Cli::try_parse_from(std::iter::once("divlab".to_string()).chain(m.command_line.iter().cloned()))
        .map_err(|e| anyhow::anyhow!("manifest command line does not parse: {}", e.render()))?;
    if matches!(inner.command, Command::Replay(_)) {
        bail!("manifest records a replay");
    }
    let (rerun, _) = execute(&inner)?;
    let digest = rerun.result_digest();
    let reproduced = rerun.verdict == m.verdict && digest == m.result_sha256;
    let values = json!({
        "command_line": m.command_line,
        "inputs_checked": m.inputs.len(),
        "recorded_verdict": m.verdict,
        "replayed_verdict": rerun.verdict,
        "recorded_result_sha256": m.result_sha256,
        "replayed_result_sha256": digest,
    });
    let verdict = if reproduced { Verdict::Reproduced } else { Verdict::Mismatch };
    let mut r = Report::new(verdict, rerun.hypotheses_hold, values);
    r.nodes = rerun.nodes;
    Ok(r)
}
