mod description;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use description::{ActionDescription, BuildError};
use report::{run, Failure, Request};

/// Compute generators, Hilbert ideals, presentations and Molien series for
/// rings of polynomial invariants described in a JSON file.
#[derive(Debug, Parser)]
#[command(name = "invring", version)]
struct Cli {
    command: Command,
    /// Action description (JSON).
    file: PathBuf,
    /// Algorithm for finite actions.
    #[arg(long, value_enum)]
    algorithm: Option<Algorithm>,
    /// Degree bound (finite invariants), number of series terms (molien) or
    /// top degree checked (verify, default 6).
    #[arg(long)]
    max_degree: Option<u32>,
    /// Compute diagonal invariants over GF(literalQ) itself.
    #[arg(long)]
    literal: bool,
    /// Comma-separated degrees for hilbert-series.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Invariants,
    Molien,
    HilbertIdeal,
    DefiningIdeal,
    HilbertSeries,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    King,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.file.display());
            return ExitCode::from(1);
        }
    };
    let outcome = ActionDescription::from_json(&text)
        .map_err(BuildError::Input)
        .map_err(Failure::from)
        .and_then(|description| {
            let request = Request {
                command: cli.command,
                algorithm: cli.algorithm,
                max_degree: cli.max_degree,
                literal: cli.literal,
                degrees: cli.degrees.clone(),
                output: cli.output,
            };
            run(&description, &request)
        });
    match outcome {
        Ok(report) => {
            println!("{}", report.text);
            ExitCode::from(report.exit_code)
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
