//! `mpss`: spectral-sequence pages, homology and fundamental-group
//! presentations of directed graphs from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input,
//! 3 a budget or complex cap was exceeded.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mpss_core::Error;

use input::Format;

#[derive(Parser, Debug)]
#[command(name = "mpss", version, about = "Homotopy and homology invariants of finite directed graphs")]
pub struct Cli {
    /// Emit a JSON envelope {"command", "input", "result"} instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Format of graph inputs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct GraphArg {
    /// Graph file (JSON or edge list); stdin when omitted or `-`.
    pub input: Option<PathBuf>,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct Caps {
    /// Weight cap of the filtered complex.
    #[arg(long)]
    pub pmax: Option<u64>,
    /// Degree cap of the filtered complex.
    #[arg(long)]
    pub nmax: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quasimetric table.
    Dist(GraphArg),
    /// One cell E^r_{p,q} of the spectral sequence.
    Page {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[command(flatten)]
        caps: Caps,
    },
    /// E^r_{p,n-p} for 0 <= p <= pmax and 0 <= n <= nmax.
    PageTable {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        pmax: i64,
        #[arg(long, default_value_t = 2)]
        nmax: i64,
        /// Evaluate the cells one after another.
        #[arg(long)]
        sequential: bool,
    },
    /// Magnitude homology MH_n^p = E^1_{p,n-p}.
    Magnitude {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        n: i64,
    },
    /// Path homology in degree p (E^2_{p,0}).
    PathHomology {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        p: i64,
    },
    /// Reachability homology RH_n.
    Reachability {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        n: usize,
    },
    /// Presentation of the r-fundamental group and its abelianization.
    Pi1 {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        base: String,
    },
    /// Cross-checks the presentation against E^r_{1,0}.
    HurewiczCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        base: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Abelianized π_1^∞ by scanning r until it meets RH_1.
    Pi1Infty {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        base: String,
        /// Largest r to scan; defaults to twice the diameter.
        #[arg(long)]
        max_r: Option<usize>,
    },
    /// Decides whether an induced subgraph inclusion A ⊆ X is an r-cofibration.
    CofibrationCheck {
        #[command(flatten)]
        graph: GraphArg,
        /// A positive integer or `inf`.
        #[arg(long, value_parser = input::parse_level)]
        r: input::Level,
        /// Graph file for A.
        #[arg(long)]
        subgraph: PathBuf,
    },
    /// Searches for a degenerate Γ_r in X ∪ Y that factors through neither side.
    GammaCheck {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Mayer-Vietoris exactness on E^r_{1,0} for subgraphs X, Y.
    MvCheck {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Skip the factorization certificate and assume separability.
        #[arg(long)]
        assume_separable: bool,
    },
    /// Mayer-Vietoris exactness on E^s_{1,0} for the pushout X ∪_A Y.
    PushoutMv {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// Graph file for A, an induced subgraph of X.
        #[arg(long)]
        subgraph: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// The map A -> Y as `a:y1,b:y2,...`.
        #[arg(long)]
        map: String,
    },
    /// Generators and boundary matrices of the filtered complex.
    DumpComplex {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InsufficientCaps { .. } | Error::BudgetExceeded { .. } | Error::NoStabilization(_) => {
                Failure::Limit(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if cli.json {
                let envelope = serde_json::json!({
                    "command": out.command,
                    "input": out.input,
                    "result": out.result,
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON values serialize"));
            } else {
                print!("{}", out.text);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("limit exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
