//! `brieskorn`: invariants, signatures, KE certificates and censuses of
//! Brieskorn–Pham links from the command line.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error, 3 refused
//! unbounded search.

mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use brieskorn_core::census::Predicate;
use brieskorn_core::{Error, PairRule};
use clap::{Parser, Subcommand, ValueEnum};

use crate::output::{Envelope, Format};

/// Worker-count override consulted only when `--jobs` is absent.
pub const JOBS_ENV: &str = "BRIESKORN_JOBS";

#[derive(Debug, Parser)]
#[command(
    name = "brieskorn",
    version,
    about = "Invariants and censuses of Brieskorn–Pham links"
)]
struct Cli {
    /// Output format; csv and table list one row per record.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; output does not depend on this value.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: Option<u64>,
    /// Append-only JSON-lines result cache.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Homology type through the gcd graph, torsion and Fano class.
    Classify {
        #[arg(required = true, num_args = 2.., value_name = "A")]
        exponents: Vec<u64>,
    },
    /// Milnor number, characteristic polynomial, Betti number and Δ(1).
    Invariants {
        #[arg(num_args = 2.., value_name = "A", required_unless_present = "weights", conflicts_with = "weights")]
        exponents: Vec<u64>,
        #[arg(long, num_args = 2.., value_name = "W", requires = "degree")]
        weights: Option<Vec<u64>>,
        #[arg(long, value_name = "D", requires = "weights")]
        degree: Option<u64>,
    },
    /// Milnor-fiber signature and, for homotopy spheres, the bP class.
    Signature {
        #[arg(required = true, num_args = 2.., value_name = "A")]
        exponents: Vec<u64>,
        /// Skip the cotangent-sum cross-check.
        #[arg(long)]
        no_zagier: bool,
        /// Cotangent-sum period `N = multiple · lcm(a)`.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        multiple: u64,
    },
    /// Kähler–Einstein sufficiency inequalities.
    Ke {
        #[arg(required = true, num_args = 2.., value_name = "A")]
        exponents: Vec<u64>,
        /// Pair range of the third inequality: distinct or with-diagonal.
        #[arg(long, default_value = "distinct")]
        pairs: PairRule,
    },
    /// Exhaustive census of links in one dimension.
    Enumerate {
        /// Link dimension, odd and at least 3.
        #[arg(long)]
        dim: u64,
        /// Comma-separated predicates: homotopy-sphere, rational-hs, ke, fano.
        #[arg(long, required = true, value_delimiter = ',')]
        filter: Vec<Predicate>,
        /// Cap on every exponent; needed when the filters leave the search unbounded.
        #[arg(long)]
        max_exponent: Option<u64>,
        /// Comma-separated exponents every tuple must contain.
        #[arg(long, value_delimiter = ',')]
        require: Vec<u64>,
        /// Pair range of the third KE inequality: distinct or with-diagonal.
        #[arg(long, default_value = "distinct")]
        pairs: PairRule,
    },
    /// Recompute a published table and compare cell by cell.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(brieskorn_core::census::REPRO_IDS))]
        id: String,
    },
    /// Integer sequences used by the constructions.
    Sequence {
        #[arg(value_enum)]
        name: SequenceName,
        #[arg(long)]
        upto: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceName {
    /// `c_1 = 2`, `c_{k+1} = c_1 ⋯ c_k + 1`.
    C,
}

fn resolve_jobs(flag: Option<u64>) -> Result<usize, Error> {
    if let Some(j) = flag {
        return Ok(j as usize);
    }
    match std::env::var(JOBS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(j) if j >= 1 => Ok(j),
            _ => Err(Error::Usage(format!(
                "{JOBS_ENV}={v:?} is not a positive integer"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::InvalidInput(_) | Error::Dimension(_) | Error::Domain(_) => 2,
        Error::Unbounded(_) => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let jobs = resolve_jobs(cli.jobs)?;
    let request = commands::Request::new(&cli.command)?;
    let cached = cli
        .cache
        .as_deref()
        .and_then(|p| match cache::lookup(p, &request) {
            Ok(hit) => hit,
            Err(e) => {
                eprintln!("brieskorn: cache not read: {e}");
                None
            }
        });
    let (result, warnings) = match cached {
        Some(hit) => hit,
        None => {
            let outcome = brieskorn_core::with_jobs(jobs, || commands::execute(&cli.command))??;
            if let Some(p) = cli.cache.as_deref() {
                if let Err(e) = cache::store(p, &request, &outcome.0, &outcome.1) {
                    eprintln!("brieskorn: cache not written: {e}");
                }
            }
            outcome
        }
    };
    let envelope = Envelope::new(&request, result, warnings);
    output::write(&envelope, cli.format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("brieskorn: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
