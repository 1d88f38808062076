use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use lincontract::cli::{load_paths, run, Command, Report};

#[derive(Parser)]
#[command(name = "lincontract")]
#[command(about = "Check assume-guarantee contracts for linear systems with exact arithmetic")]
#[command(version)]
struct Cli {
    /// Definition file, or a directory whose *.lc files are all read
    #[arg(short, long = "file", global = true)]
    files: Vec<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Suppress witnesses and matrices in text output
    #[arg(long, global = true)]
    quiet: bool,

    /// Include wall-clock time in the report
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a system is in input-output form
    CheckIo { sys: String },
    /// Print a minimal kernel representation with latent variables removed
    Eliminate { sys: String },
    /// Smith form of a kernel's matrix or of a literal such as "[[s, 1]]"
    Smith { matrix: String },
    /// Decide B(R1) ⊂ B(R2)
    Include { r1: String, r2: String },
    /// Decide whether a system implements a contract
    Implements { sys: String, contract: String },
    /// Decide whether an environment is compatible with a contract
    Compatible { env: String, contract: String },
    /// Decide whether C1 refines C2
    Refines { c1: String, c2: String },
    /// Conjunction of two contracts, as a definition in the input grammar
    Conjoin {
        c1: String,
        c2: String,
        /// Write the definitions here instead of only reporting them
        #[arg(long)]
        out: Option<PathBuf>,
        /// Name of the generated contract (default C1_and_C2)
        #[arg(long)]
        name: Option<String>,
    },
}

impl Cmd {
    fn into_command(self) -> (Command, Option<PathBuf>) {
        match self {
            Cmd::CheckIo { sys } => (Command::CheckIo { sys }, None),
            Cmd::Eliminate { sys } => (Command::Eliminate { sys }, None),
            Cmd::Smith { matrix } => (Command::Smith { matrix }, None),
            Cmd::Include { r1, r2 } => (Command::Include { r1, r2 }, None),
            Cmd::Implements { sys, contract } => (Command::Implements { sys, contract }, None),
            Cmd::Compatible { env, contract } => (Command::Compatible { env, contract }, None),
            Cmd::Refines { c1, c2 } => (Command::Refines { c1, c2 }, None),
            Cmd::Conjoin { c1, c2, out, name } => (Command::Conjoin { c1, c2, name }, out),
        }
    }
}

fn emit(report: &Report, format: Format, quiet: bool) {
    match format {
        Format::Text => print!("{}", report.to_text(quiet)),
        Format::Json => println!("{}", report.to_json()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (command, out) = cli.command.into_command();

    let mut report = match load_paths(&cli.files) {
        Ok(doc) => run(&command, &doc),
        Err(e) => Report::error(command.words(), e.to_string()),
    };

    if let (Some(path), Some(text)) = (&out, &report.document) {
        match std::fs::write(path, text) {
            Ok(()) => report.diagnostics.push(format!("written to {}", path.display())),
            Err(e) => report = Report::error(command.words(), format!("{}: {e}", path.display())),
        }
    }
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    emit(&report, cli.format, cli.quiet);
    ExitCode::from(report.exit_code as u8)
}
