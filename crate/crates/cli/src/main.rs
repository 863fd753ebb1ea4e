//! `nullseries` — build, iterate, analyze, and verify trigonometric
//! null-series artifacts.
//!
//! Exit-code contract: 0 success, 1 usage/config error, 2 verification or
//! certificate failure, 3 resource cap. Every error also emits a
//! machine-readable JSON diagnostic on stderr.

mod analyze;
mod build;
mod config;
mod construct;
mod manifest;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nullseries_core::Error;

#[derive(Parser)]
#[command(name = "nullseries", version, about = "null-series construction and verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum BlockKind {
    /// Node-interpolation block h (small partial sum on [0, 1/2]).
    H,
    /// Flat-spectrum block f (Menshov-type assembly).
    F,
    /// Plateau function u (close to 1, small Fourier defect).
    Plateau,
    /// Narrow nonnegative window q.
    Window,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    C2,
    Gevrey2,
}

impl Profile {
    fn class(self) -> nullseries_core::profile::SmoothnessClass {
        match self {
            Profile::C2 => nullseries_core::profile::SmoothnessClass::C2,
            Profile::Gevrey2 => nullseries_core::profile::SmoothnessClass::Gevrey2,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a single block and optionally persist it with a manifest.
    BuildBlock {
        #[arg(value_enum)]
        kind: BlockKind,
        /// Accuracy parameter of the block.
        #[arg(long)]
        eps: f64,
        /// Output directory; omit to print the summary only.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Smoothness profile for plateau/window blocks.
        #[arg(long, value_enum, default_value = "c2")]
        profile: Profile,
        /// Working precision in bits (default: NULLSERIES_PRECISION or 53).
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Run the staged construction and write stages + manifest.
    Construct {
        /// Number of stages (ignored when --config is given).
        #[arg(long)]
        stages: Option<u32>,
        #[arg(long)]
        out: PathBuf,
        /// JSON run configuration (schema-validated, unknown keys rejected).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Working precision in bits (default: NULLSERIES_PRECISION or 53).
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Measurement and calculator subcommands.
    Analyze {
        #[command(subcommand)]
        what: analyze::AnalyzeCmd,
    },
    /// Recompute all certificates of a run directory via independent oracles.
    Verify { dir: PathBuf },
    /// Summarize a run directory and emit CSV plot data.
    Report { dir: PathBuf },
}

/// Default precision bits: flag, then NULLSERIES_PRECISION, then f64.
fn precision_bits(flag: Option<u32>) -> Result<u32, Error> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("NULLSERIES_PRECISION") {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::invalid(format!("NULLSERIES_PRECISION is not a bit count: {v}"))),
        Err(_) => Ok(53),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Io(_) => 1,
        Error::Numeric(_) | Error::Certificate(_) | Error::Format(_) => 2,
        Error::Resource(_) => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument(_) => "usage",
        Error::Numeric(_) => "numeric",
        Error::Certificate(_) => "certificate",
        Error::Resource(_) => "resource",
        Error::Io(_) => "io",
        Error::Format(_) => "format",
    }
}

fn emit_diagnostic(e: &Error) {
    let diag = serde_json::json!({
        "error": { "kind": error_kind(e), "message": e.to_string() }
    });
    eprintln!("{diag}");
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::BuildBlock {
            kind,
            eps,
            out,
            profile,
            precision,
        } => build::run(kind, eps, out, profile, precision_bits(precision)?),
        Cmd::Construct {
            stages,
            out,
            config,
            precision,
        } => construct::run(stages, out, config, precision_bits(precision)?),
        Cmd::Analyze { what } => analyze::run(what),
        Cmd::Verify { dir } => verify::run(&dir),
        Cmd::Report { dir } => report::run(&dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let diag = serde_json::json!({
                "error": { "kind": "usage", "message": e.to_string() }
            });
            eprintln!("{diag}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            emit_diagnostic(&e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
