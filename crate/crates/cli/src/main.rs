//! Command line front end for the bond-entanglement library.
//!
//! Scenarios arrive as JSON configuration files, results leave as
//! deterministic JSON documents or plain tables. `reproduce-paper`
//! recomputes every published reference value and checks it against the
//! implementation.

mod config;
mod doc;
mod repro;
mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Failures surfaced to the shell.
///
/// Exit codes: 2 for configuration or schema trouble, 3 for numerical or
/// domain errors raised by the library, 1 for anything else.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Io(String),
    ClaimsFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) | CliError::ClaimsFailed(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Config(m) => format!("configuration error: {m}"),
            CliError::Numeric(m) => format!("numerical error: {m}"),
            CliError::Io(m) => format!("io error: {m}"),
            CliError::ClaimsFailed(n) => format!("{n} reference claim(s) out of tolerance"),
        }
    }
}

impl From<qbond::Error> for CliError {
    fn from(err: qbond::Error) -> Self {
        CliError::Numeric(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "qbond",
    version,
    about = "Qubit and qutrit chemical-bond states: entanglement, thermal mixing, \
             bridge handover and ligand recognition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario configuration file (JSON).
    #[arg(long, value_name = "FILE")]
    config: PathBuf,

    /// Overrides the seed from the configuration.
    #[arg(long)]
    seed: Option<u64>,

    /// Also writes the JSON result document to this path.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Stdout rendering.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ReproArgs {
    /// Also writes the JSON claim report to this path.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Stdout rendering.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Builds a single bond state and reports its entanglement.
    Bond(RunArgs),
    /// Mixes tunneling eigenstates thermally and measures what survives.
    Thermal(RunArgs),
    /// Runs the bridge handover protocol on an intermolecular pair.
    Swap(RunArgs),
    /// Classifies docked ligands as agonists or antagonists.
    Recognize(RunArgs),
    /// Counts the ligands distinguishable with a given bond budget.
    Capacity(RunArgs),
    /// Recomputes every published reference value and checks it.
    ReproducePaper(ReproArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bond(args) => run_scenario(&args, &["covalent", "hbond"]),
        Command::Thermal(args) => run_scenario(&args, &["thermal"]),
        Command::Swap(args) => run_scenario(&args, &["swap"]),
        Command::Recognize(args) => run_scenario(&args, &["recognize"]),
        Command::Capacity(args) => run_scenario(&args, &["capacity"]),
        Command::ReproducePaper(args) => run_repro(&args),
    }
}

fn run_scenario(args: &RunArgs, accepted: &[&str]) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let kind = cfg.scenario.kind_name();
    if !accepted.contains(&kind) {
        return Err(CliError::Config(format!(
            "config kind '{kind}' does not fit this subcommand (expected {})",
            accepted.join(" or ")
        )));
    }
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let report = scenario::run(&cfg.scenario, seed)?;
    let out = args.out.as_deref().or(cfg.output_path.as_deref());
    emit(&report.doc, &report.table, args.format, out)
}

fn run_repro(args: &ReproArgs) -> Result<(), CliError> {
    let rows = repro::run_manifest()?;
    let document = repro::document(&rows);
    let table = repro::table(&rows);
    emit(&document, &table, args.format, args.out.as_deref())?;
    let failed = rows.iter().filter(|row| !row.pass).count();
    if failed > 0 {
        return Err(CliError::ClaimsFailed(failed));
    }
    Ok(())
}

fn emit(
    document: &serde_json::Value,
    table: &str,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let rendered = serde_json::to_string_pretty(document).expect("document serializes");
    match format {
        Format::Table => print!("{table}"),
        Format::Json => println!("{rendered}"),
    }
    if let Some(path) = out {
        std::fs::write(path, rendered + "\n")
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
