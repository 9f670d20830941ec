//! Command-line front end for the fuzzy matrix models: CSV in, reports out
//! as human text, machine JSON or plot-ready series CSV.

mod commands;
mod csvio;
mod error;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{BamCommand, CetdArgs, FamCommand, FcmCommand, FreCommand, FrmCommand, RelCommand};
use error::CliResult;
use report::Format;

#[derive(Parser)]
#[command(name = "fuzzy-models")]
#[command(version, about = "Fuzzy matrix models: statistical fuzzification, cognitive and relational maps, associative memories and relational equations", long_about = None)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Suppress the text-format header line
    #[arg(long, global = true)]
    no_header: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Statistical pipeline: counts -> ATD -> RTD bands -> CETD row sums
    Cetd(CetdArgs),
    /// Cognitive map inference and construction
    #[command(subcommand)]
    Fcm(FcmCommand),
    /// Relational map inference, combination and fuzzification
    #[command(subcommand)]
    Frm(FrmCommand),
    /// Bidirectional associative memory runs and couplings
    #[command(subcommand)]
    Bam(BamCommand),
    /// Fuzzy associative memory recall
    #[command(subcommand)]
    Fam(FamCommand),
    /// Fuzzy relational equations: solve, verify, fit, peaks
    #[command(subcommand)]
    Fre(FreCommand),
    /// Binary fuzzy relation utilities
    #[command(subcommand)]
    Rel(RelCommand),
}

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Cetd(args) => commands::run_cetd(args, cli.format, cli.no_header),
        Command::Fcm(cmd) => commands::run_fcm(cmd, cli.format, cli.no_header),
        Command::Frm(cmd) => commands::run_frm(cmd, cli.format, cli.no_header),
        Command::Bam(cmd) => commands::run_bam(cmd, cli.format, cli.no_header),
        Command::Fam(cmd) => commands::run_fam(cmd, cli.format, cli.no_header),
        Command::Fre(cmd) => commands::run_fre(cmd, cli.format, cli.no_header),
        Command::Rel(cmd) => commands::run_rel(cmd, cli.format, cli.no_header),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
