//! `tanaka`: command-line front end for the tanaka-core engine.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tanaka_core::cohomology::RankMode;

#[derive(Parser, Debug)]
#[command(name = "tanaka", version, about = "Exact Tanaka prolongations, CR structures and parabolic gradings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the full run report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Catalog entry name.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    entry: Option<String>,
    /// JSON input file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Entry parameters, e.g. `a=3/5,b=0,c=4/5`.
    #[arg(long, default_value = "", requires = "entry")]
    params: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Modular,
}

impl From<Mode> for RankMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => RankMode::Exact,
            Mode::Modular => RankMode::Modular,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tanaka prolongation of the symbol.
    Prolong {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Symbol algebra at the origin.
    Symbol {
        #[command(flatten)]
        source: Source,
    },
    /// Growth vector of the distribution.
    Growth {
        #[command(flatten)]
        source: Source,
    },
    /// Integrability of the CR flag.
    CheckIntegrable {
        #[command(flatten)]
        source: Source,
    },
    /// Whether a polynomial vector field preserves the distribution (or the CR flag).
    CheckSymmetry {
        #[command(flatten)]
        source: Source,
        /// Components separated by `;`, in chart order (overrides the file's "field").
        #[arg(long)]
        field: Option<String>,
        /// Check the CR symmetry equations instead.
        #[arg(long)]
        cr: bool,
    },
    /// Polynomial symmetries of bounded weighted degree.
    SolveSymmetries {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        /// Solve the CR symmetry equations instead.
        #[arg(long)]
        cr: bool,
    },
    /// Invariant complex structure on the degree −1 layer.
    FindJ {
        #[command(flatten)]
        source: Source,
    },
    /// Accidental depth-2 gradings up to the given rank.
    Classify {
        #[arg(long, default_value_t = 7)]
        max_rank: usize,
    },
    /// Weight decomposition of H² and the rigidity verdict.
    Rigidity {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// List or show catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run an entry's full expected-value suite.
    Verify {
        entry: String,
        #[arg(long, default_value = "")]
        params: String,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show {
        name: String,
        #[arg(long, default_value = "")]
        params: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli.command) {
        Ok(run) => {
            let status = if run.outcome.ok { 0 } else { 1 };
            let report = report::RunReport::new(command_name(&cli.command), &argv, &run, status);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", run.outcome.text);
            }
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Prolong { .. } => "prolong",
        Command::Symbol { .. } => "symbol",
        Command::Growth { .. } => "growth",
        Command::CheckIntegrable { .. } => "check-integrable",
        Command::CheckSymmetry { .. } => "check-symmetry",
        Command::SolveSymmetries { .. } => "solve-symmetries",
        Command::FindJ { .. } => "find-j",
        Command::Classify { .. } => "classify",
        Command::Rigidity { .. } => "rigidity",
        Command::Catalog { .. } => "catalog",
        Command::Verify { .. } => "verify",
    }
}
