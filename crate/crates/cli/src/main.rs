//! `tgrs`: classify, search, construct and encode twisted Reed-Solomon codes.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;
use tgrs::construct::DEFAULT_SEARCH_BUDGET;
use tgrs::oracle::DEFAULT_ENUM_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "tgrs", version, about = "Twisted generalized Reed-Solomon codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Threads for searches and enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Most projective messages a brute-force distance may enumerate.
    #[arg(long, global = true, env = "TGRS_ENUM_BUDGET", default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
    /// Most η tuples a search may scan.
    #[arg(long, global = true, env = "TGRS_SEARCH_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET)]
    pub search_budget: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// MDS, AMDS, defect, ℓ-MDS and self-duality verdicts for one code.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also test self-duality (needs n = 2k).
        #[arg(long)]
        self_dual: bool,
        /// Skip the brute-force Singleton defects.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Count the η tuples giving an MDS code, for each k.
    Search(SearchArgs),
    /// Build the self-dual code attached to x^ℓ - a.
    Construct {
        /// Base field GF(q), e.g. "13".
        #[arg(long)]
        q: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        a: u64,
        /// Free leading η values, comma separated.
        #[arg(long, default_value = "")]
        eta: String,
        /// Modulus of GF(q^{2s}) over GF(p), ascending, e.g. "2,7,1".
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Encode a message.
    Encode {
        #[command(flatten)]
        spec: SpecArgs,
        /// k field elements, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        message: String,
    },
    /// Reproduce one of the built-in search tables.
    Table {
        #[arg(value_enum)]
        preset: Preset,
        #[arg(long)]
        list: bool,
    },
}

/// A spec from a JSON file, or inline.
#[derive(Args, Debug)]
pub struct SpecArgs {
    /// Spec JSON file, "-" for stdin.
    #[arg(long, conflicts_with_all = ["field", "k", "alpha", "v", "eta"])]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: Option<String>,
    /// Column multipliers; all ones when omitted.
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long)]
    pub eta: Option<String>,
    /// Allow ℓ up to k with ℓ > n - k.
    #[arg(long)]
    pub extended: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub alpha: String,
    /// Dimensions: "5", "5..9" or "3,5,7".
    #[arg(long)]
    pub k: String,
    #[arg(long)]
    pub ell: usize,
    /// JSON file holding a list of η tuples; all of GF(q)^ℓ when omitted.
    #[arg(long)]
    pub domain: Option<PathBuf>,
    /// Print every MDS tuple.
    #[arg(long)]
    pub list: bool,
    /// Evaluate full determinants instead of the closed forms.
    #[arg(long)]
    pub no_fast: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// q = 11, ℓ = 2, α = (1,2,3,5,6,8,9,10), k = 3..7.
    #[value(name = "q11-l2")]
    Q11L2,
    /// q = 13, ℓ = 3, α = (0,1,2,3,4,5,6,9,10,12), k = 5..9.
    #[value(name = "q13-l3")]
    Q13L3,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
