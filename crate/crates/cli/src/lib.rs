//! Command-line front end: `transdiam <command> [options]`.

mod commands;
mod example;
mod fmt;
mod load;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use transdiam_core::Error;

pub use fmt::sig12;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_VERDICT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "transdiam",
    version,
    about = "Graded bases, compliance checks and transfinite diameter estimates on affine varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Options shared by all commands.
#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Options {
    /// Variety file, or the name of a bundled one (hyperbola.var, cone2d.var,
    /// nondistinct.var, cross-terms.var).
    #[arg(long, global = true)]
    pub variety: Option<String>,
    /// Degree.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Largest degree of a sweep.
    #[arg(long = "k-max", global = true)]
    pub k_max: Option<usize>,
    /// Nodes per x-dimension (quadrature for gram/basis, candidates for
    /// fekete/compare).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub starts: u64,
    /// torus, segment or file:PATH.
    #[arg(long, global = true, default_value = "torus")]
    pub sampler: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisArg {
    Monomial,
    Cm,
    Bb,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Check the presentation, sheets and points at infinity.
    Validate,
    /// Print a graded basis up to degree k.
    Basis {
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
    },
    /// Dimension counts and the sandwich bounds.
    Counts,
    /// Decide compliance of two families.
    Compliance {
        /// monomial, cm, bb or family:NAME.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Gram matrix of a basis under the torus measure.
    Gram {
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
    },
    /// Fekete estimates for one basis.
    Fekete {
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
    },
    /// Fekete estimates for monomial, cm and bb on shared candidates.
    Compare,
    /// Run the worked hyperbola example end to end.
    ReproduceExample,
}

/// Everything that determines a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(flatten)]
    pub options: Options,
}

/// JSON report layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub result: serde_json::Value,
}

/// Rendered command output.
pub(crate) struct Outcome {
    pub table: String,
    pub csv: String,
    pub json: serde_json::Value,
    /// False for a failed check.
    pub verdict: bool,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Numeric(_) => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    }
}

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    let config = RunConfig {
        command: cli.command,
        options: cli.opts,
    };
    let outcome = match commands::dispatch(&config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return error_code(&e);
        }
    };
    let text = match config.options.format {
        Format::Table => outcome.table,
        Format::Csv => outcome.csv,
        Format::Json => {
            let report = Report {
                config: config.clone(),
                result: outcome.json,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    };
    let written = match &config.options.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    if outcome.verdict {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}
