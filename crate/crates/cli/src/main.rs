use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use gagcodes::pipeline::{self, Analysis};
use gagcodes::{Config, ErrorKind, Parallelism, PipelineError, Report};

const EXIT_PARSE: u8 = 1;
const EXIT_ORDER_DOMAIN: u8 = 2;
const EXIT_BOUND_VIOLATION: u8 = 3;
const EXIT_RESOURCE_CAP: u8 = 4;

/// Build evaluation codes over finite fields from a TOML description and
/// check their distance bounds.
#[derive(Debug, Parser)]
#[command(name = "gagcodes", version)]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Footprint, order-domain diagnosis, Γ and σ table; builds no code.
    Analyze { config: PathBuf },
    /// Build the code and write its generator matrix.
    Build {
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build the code, compute its exact distance and check every bound.
    Verify {
        config: PathBuf,
        /// Largest number of messages to enumerate.
        #[arg(long)]
        max_enum: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<PipelineError>().map(PipelineError::kind) {
                Some(ErrorKind::OrderDomain) => EXIT_ORDER_DOMAIN,
                Some(ErrorKind::ResourceCap) => EXIT_RESOURCE_CAP,
                Some(ErrorKind::Input) | None => EXIT_PARSE,
            };
            ExitCode::from(code)
        }
    }
}

fn load(path: &Path) -> Result<Analysis> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg = Config::parse(&text)
        .map_err(PipelineError::from)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(pipeline::analyze(&cfg)?)
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = if cli.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let path = match &cli.command {
        Command::Analyze { config } | Command::Build { config, .. } | Command::Verify { config, .. } => config,
    };
    let analysis = load(path)?;
    let report = Report::new(&analysis);
    if !analysis.diagnosis.satisfied {
        emit(cli, &report)?;
        return Ok(EXIT_ORDER_DOMAIN);
    }
    match &cli.command {
        Command::Analyze { .. } => {
            emit(cli, &report)?;
            Ok(0)
        }
        Command::Build { output, .. } => {
            let code = pipeline::build(&analysis)?;
            write_atomically(output, &code.matrix_text())?;
            emit(cli, &report.with_code(&code))?;
            Ok(0)
        }
        Command::Verify { max_enum, .. } => {
            let code = pipeline::build(&analysis)?;
            let cap = max_enum.unwrap_or(analysis.config.output.max_enum);
            let v = pipeline::verify(&code, cap, Parallelism::Parallel)?;
            emit(cli, &report.with_code(&code).with_verification(&v))?;
            Ok(if v.all_hold() { 0 } else { EXIT_BOUND_VIOLATION })
        }
    }
}

/// Writes through a temporary file in the target directory, so a failed
/// run never leaves a partial matrix behind.
fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
