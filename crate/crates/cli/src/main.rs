//! `cwsmod`: validate and analyze codeword stabilized codes over Z_d.
//!
//! Exit status: 0 when the checked property holds, 1 when it fails, 2 for
//! unreadable or invalid input.

mod commands;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{ErrorSource, Report};
use cwsmod_core::{CodeDocument, Error, DEFAULT_ENUMERATION_LIMIT};

#[derive(Parser)]
#[command(
    name = "cwsmod",
    version,
    about = "Analyze codeword stabilized quantum codes over Z_d"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Code document (JSON); read from stdin when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Errors to check: a JSON array of operators or an object with "errors".
    #[arg(long, global = true, conflicts_with = "all_weight")]
    errors: Option<PathBuf>,

    /// Check every non-identity Pauli operator of weight at most W.
    #[arg(long, global = true, value_name = "W")]
    all_weight: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of group elements to enumerate.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Check the stabilizer group and, if present, the codewords.
    Validate,
    /// Run every analysis that applies to the document.
    Analyze,
    /// Decide whether the CWS code is a stabilizer code.
    IsStabilizer,
    /// Check which errors the code detects.
    Detect,
    /// Extend the stabilizer group to a maximal one.
    Extend,
    /// Convert a stabilizer code into an equivalent CWS code.
    ToCws,
    /// Cross-check symbolic results against dense matrices.
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, String> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn describe(err: &Error) -> String {
    match err {
        Error::Document {
            line,
            column,
            message,
        } => {
            format!("line {line}, column {column}: {message}")
        }
        Error::Syntax { position, message } => format!("at byte {position}: {message}"),
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    let text = read_input(cli.input.as_ref())?;
    let doc = CodeDocument::from_json(&text).map_err(|e| describe(&e))?;
    let source = match (&cli.errors, cli.all_weight) {
        (Some(path), _) => ErrorSource::File(
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        ),
        (None, Some(w)) => ErrorSource::AllWeight(w),
        (None, None) => ErrorSource::Document,
    };
    let result = match cli.command {
        Command::Validate => commands::validate(&doc, cli.limit),
        Command::Analyze => commands::analyze(&doc, cli.limit, &source),
        Command::IsStabilizer => commands::is_stabilizer(&doc),
        Command::Detect => commands::detect(&doc, &source),
        Command::Extend => commands::extend(&doc),
        Command::ToCws => commands::to_cws(&doc),
        Command::Oracle => commands::oracle(&doc, &source),
    };
    result.map_err(|e| describe(&e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                ),
                Format::Text => {
                    print!("{}", report.text);
                    println!("elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
                }
            }
            ExitCode::from(if report.holds { 0 } else { 1 })
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
