use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod files;

use commands::Report;

/// Rational homotopy of formal simply connected spaces.
#[derive(Debug, Parser)]
#[command(name = "rht", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Highest degree to compute (default: 2 * formal_dimension - 1).
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal model and homotopy ranks of an algebra file.
    Model { file: PathBuf },
    /// Elliptic / hyperbolic verdict with its certificate.
    Classify { file: PathBuf },
    /// Koszul homology of the relations as a sequence in the polynomial ring.
    Koszul { file: PathBuf },
    /// Validate and classify a Hodge diamond file.
    Diamond { file: PathBuf },
    /// Query the Fano threefold table.
    Fano {
        #[command(subcommand)]
        query: FanoQuery,
    },
}

#[derive(Debug, Subcommand)]
enum FanoQuery {
    /// List families, optionally filtered.
    List {
        #[arg(long)]
        b2: Option<u32>,
        /// Only families with elliptic homotopy type.
        #[arg(long)]
        elliptic: bool,
    },
    /// Show one family by id, e.g. `b2=1/X22`.
    Show { id: String },
}

fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Model { file } => commands::model(file, cli.max_degree),
        Command::Classify { file } => commands::classify(file, cli.max_degree),
        Command::Koszul { file } => commands::koszul(file, cli.max_degree),
        Command::Diamond { file } => commands::diamond(file),
        Command::Fano { query } => match query {
            FanoQuery::List { b2, elliptic } => Ok(commands::fano_list(*b2, elliptic.then_some(true))),
            FanoQuery::Show { id } => commands::fano_show(id),
        },
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors and 0 for --help / --version
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                print!("{}", report.text);
            }
            for d in &report.diagnostics {
                eprintln!("{}", d);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}
