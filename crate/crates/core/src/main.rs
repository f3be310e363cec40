use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use cml_core::experiments::{run, to_csv, to_json, Experiment, RunOptions};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Batch experiments on measures on the circle.
#[derive(Debug, Parser)]
#[command(name = "cml", version)]
struct Cli {
    /// riesz, nonsep, gap, wiener, ap, idem, spectrum, obstruct or filterlimit
    experiment: String,
    /// JSON config; for `gap`, omit to use the bundled corpus
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    window: Option<i64>,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Evaluate gap candidates in parallel
    #[arg(long)]
    parallel: bool,
    /// Record wall time in the report (and print it to stderr)
    #[arg(long)]
    timing: bool,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("cml: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let experiment: Experiment = match cli.experiment.parse() {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let config = match (&cli.config, experiment) {
        (Some(path), _) => match fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        },
        (None, Experiment::Gap) => cml_core::experiments::BUNDLED_GAP_CORPUS.to_string(),
        (None, _) => return fail("--config is required"),
    };
    let opts = RunOptions {
        window: cli.window,
        trunc: cli.trunc,
        eps: cli.eps,
        delta: cli.delta,
        parallel: cli.parallel,
    };
    let start = Instant::now();
    let mut report = match run(experiment, &config, &opts) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let ms = start.elapsed().as_secs_f64() * 1e3;
    if cli.timing {
        eprintln!("cml: {experiment} finished in {ms:.3} ms");
        report.wall_time_ms = Some(ms);
    }
    let text = match cli.format {
        Format::Json => to_json(&report),
        Format::Csv => to_csv(&report),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                return fail(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
