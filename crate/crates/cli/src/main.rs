//! `gorenstein` command-line tool.
//!
//! Exit codes: 0 success, 2 fixture mismatch, 3 input error, 4 internal
//! invariant violation.

mod commands;
mod db;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "gorenstein", version, about = "Smooth Gorenstein polytopes: classification and invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants of a polytope file.
    Analyze {
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate smooth Gorenstein polytopes into a database directory.
    Classify(ClassifyArgs),
    /// Build polytopes from the large-index families or by operations.
    Construct(ConstructArgs),
    /// Stringy E-polynomial and Hodge table of a Gorenstein polytope.
    Stringy {
        file: PathBuf,
        /// Compute for the dual Gorenstein polytope instead.
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        json: bool,
    },
    /// Recompute and check every stored polytope of a database.
    DbVerify { dir: PathBuf },
    /// Histogram of Fano indices from an index-1 database.
    FanoTable {
        #[arg(long = "dim")]
        d: usize,
        /// Database directory written by `classify --min-index 1`.
        #[arg(long, default_value = "db")]
        db: PathBuf,
    },
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long = "dim")]
    pub d: usize,
    #[arg(long = "min-index", default_value_t = 1)]
    pub r_min: usize,
    /// Coordinate box; raised automatically while results touch it when omitted.
    #[arg(long = "box")]
    pub b: Option<i64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ConstructArgs {
    /// Every member of the large-index family for dimension D and index R.
    #[arg(long, num_args = 2, value_names = ["D", "R"], conflicts_with_all = ["simplex", "input", "cayley", "product"])]
    pub family: Option<Vec<usize>>,
    /// Start from the unimodular simplex of this dimension.
    #[arg(long, conflicts_with = "input")]
    pub simplex: Option<usize>,
    /// Start from a polytope file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Dilate the starting polytope.
    #[arg(long)]
    pub dilate: Option<u64>,
    /// Cayley polytope of the given files.
    #[arg(long, num_args = 1.., conflicts_with_all = ["simplex", "input", "product"])]
    pub cayley: Option<Vec<PathBuf>>,
    /// Product of the given files.
    #[arg(long, num_args = 1.., conflicts_with_all = ["simplex", "input"])]
    pub product: Option<Vec<PathBuf>>,
    /// Output directory; a single result goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Fixture(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Fixture(_) => 2,
            Failure::Input(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Fixture(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<gorenstein::Error> for Failure {
    fn from(e: gorenstein::Error) -> Failure {
        use gorenstein::Error as E;
        match e {
            E::GorensteinConditionViolated { .. } | E::ExponentRangeViolation { .. } | E::NonEulerian => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

fn threads_from_env() -> Option<usize> {
    std::env::var("GORENSTEIN_THREADS").ok().and_then(|s| s.trim().parse().ok()).filter(|&n| n > 0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = gorenstein::par::with_threads(threads_from_env(), move || match cli.command {
        Command::Analyze { file, json } => commands::analyze(&file, json),
        Command::Classify(args) => commands::classify(&args),
        Command::Construct(args) => commands::construct(&args),
        Command::Stringy { file, dual, json } => commands::stringy(&file, dual, json),
        Command::DbVerify { dir } => commands::db_verify(&dir),
        Command::FanoTable { d, db } => commands::fano_table(d, &db),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
