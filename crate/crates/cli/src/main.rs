use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use twarrow_cli::format::{parse_input, Input};
use twarrow_cli::report::{CommandEcho, Params, Report};
use twarrow_cli::suites::{export_dot, export_summary, run_check, tw_command, Suite};
use twarrow_cli::CliError;

/// Twisted arrow constructions and exhaustive structural checks.
#[derive(Parser)]
#[command(name = "twarrow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    JsonReport,
}

#[derive(clap::Args)]
struct Common {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Truncation of constructed spaces (tw: of the output).
    #[arg(long)]
    trunc: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted arrow category or simplicial set, with its projection.
    Tw {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[command(flatten)]
        common: Common,
    },
    /// Run a check suite and print a JSON report.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// A space document (not needed by boundary-mono and corner-mono).
        input: Option<PathBuf>,
        #[arg(long, visible_alias = "n", default_value_t = 4)]
        n_max: usize,
        #[arg(long, visible_alias = "k", default_value_t = 9)]
        k_max: usize,
        /// Include wall-clock time (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Export as DOT or as a structural JSON summary.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: OutputFormat,
        #[command(flatten)]
        common: Common,
    },
}

fn read_input(path: &PathBuf) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| match e {
        CliError::Parse { line, column, message } => {
            CliError::Parse { line, column, message: format!("{}: {message}", path.display()) }
        }
        other => other,
    })
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Tw { input, format, common } => {
            let dot = match format {
                OutputFormat::Json => false,
                OutputFormat::Dot => true,
                OutputFormat::JsonReport => return Err(CliError::Usage("tw writes json or dot".into())),
            };
            let text = tw_command(&read_input(&input)?, common.trunc, dot)?;
            write_output(&common.out, &text)?;
            Ok(true)
        }
        Command::Check { suite, input, n_max, k_max, timing, common } => {
            let start = Instant::now();
            let params = Params { n_max, k_max, trunc: common.trunc.unwrap_or(7) };
            let parsed = match (&input, suite.needs_input()) {
                (Some(p), _) => Some(read_input(p)?),
                (None, true) => return Err(CliError::Usage(format!("suite {} needs an input file", suite.name()))),
                (None, false) => None,
            };
            let checks = run_check(suite, parsed.as_ref(), params)?;
            let echo = CommandEcho {
                verb: "check".into(),
                suite: Some(suite.name().into()),
                input: input.map(|p| p.display().to_string()),
                params,
            };
            let mut report = Report::new(echo, checks);
            if timing {
                report.elapsed_ms = Some(start.elapsed().as_millis());
            }
            eprint!("{}", report.summary_lines());
            write_output(&common.out, &report.to_json())?;
            Ok(report.passed)
        }
        Command::Export { input, format, common } => {
            let params = Params { trunc: common.trunc.unwrap_or(7), ..Params::default() };
            let parsed = read_input(&input)?;
            let text = match format {
                OutputFormat::Dot => export_dot(&parsed, params)?,
                OutputFormat::JsonReport => {
                    let echo = CommandEcho {
                        verb: "export".into(),
                        suite: None,
                        input: Some(input.display().to_string()),
                        params,
                    };
                    let mut report = Report::new(echo, Vec::new());
                    report.summary = Some(export_summary(&parsed, params)?);
                    report.to_json()
                }
                OutputFormat::Json => return Err(CliError::Usage("export writes dot or json-report".into())),
            };
            write_output(&common.out, &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("twarrow: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
