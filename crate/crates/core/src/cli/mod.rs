//! The `arrangement` command line: argument parsing, file I/O, JSON reports
//! and SVG output.

pub mod io;
pub mod render;
pub mod report;
mod run;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub use run::{run, Output};

/// Exit code for a run that completed with a failed verification.
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "arrangement", version, about = "Exact invariants and extension classification for affine hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Arrangement file (JSON).
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every randomized step; recorded in reports.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random representatives (or label orders) per check.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Characteristic and Whitney polynomials, Whitney numbers, faces, regions.
    Invariants,
    /// The intersection semi-lattice as Graphviz DOT.
    Lattice,
    /// Circuits, broken circuits and NBC sets.
    Nbc {
        /// Total order on the labels, e.g. "3,1,2".
        #[arg(long)]
        order: Option<String>,
    },
    /// The induced adjoint arrangement, with the source of every member.
    Adjoint,
    /// One stratum per flat of the adjoint, with its extension invariants.
    Classify,
    /// Restrictions A/H by stratum.
    ClassifyRestrictions,
    /// The restriction A/H to a hyperplane H.
    Restrict {
        #[arg(long, allow_hyphen_values = true)]
        normal: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        offset: String,
    },
    /// Counts the complement over F_p.
    FfCount {
        #[arg(long = "prime", visible_alias = "p")]
        prime: Option<u64>,
        #[arg(long, default_value_t = crate::finitefield::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Machine checks; exits 1 on any failure.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Also compare point counts at this prime (convolution).
        #[arg(long)]
        spot_prime: Option<u64>,
        /// Extra label order (nbc).
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = crate::finitefield::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// SVG drawing of a planar arrangement; the last hyperplane is highlighted.
    Render {
        /// Drawing box "x0,y0,x1,y1".
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Classification,
    Monotonicity,
    Convolution,
    Nbc,
    Restrictions,
}

/// The exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// Parses `"3,1,2"`.
pub fn parse_order(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidOrder(format!("{t:?} is not a label")))
        })
        .collect()
}
