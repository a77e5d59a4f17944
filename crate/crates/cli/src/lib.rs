//! Command-line front end: argument types, error mapping and the
//! subcommand implementations.

pub mod commands;
pub mod schema;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use chevgauge::roots::GroupType;

#[derive(Parser, Debug)]
#[command(name = "chevgauge", version, about = "Exact gauge reduction for Chevalley-type connections")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots, Cartan matrix and the maximal-root chain.
    Roots {
        #[arg(long = "type", value_parser = parse_type)]
        group_type: GroupType,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Integer matrices of the Chevalley basis.
    Basis {
        #[arg(long = "type", value_parser = parse_type)]
        group_type: GroupType,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce a connection matrix read from JSON to normal form.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scalar parameter equation and parameter matrix A(t).
    Theorem1 {
        #[arg(long = "type", value_parser = parse_type)]
        group_type: GroupType,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = Emit::Scalar)]
        emit: Emit,
        /// Check the equation against A(t) with a cyclic-vector certificate.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bring a companion system into zero-trace normal form.
    GenericityDemo {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Bottom row a_1, ..., a_{l+1}, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        a: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce A_0 + z^2 A_1 with A_1 given by its Cartan coordinates.
    MitschiSinger {
        #[arg(long = "type", value_parser = parse_type)]
        group_type: GroupType,
        #[arg(long)]
        rank: usize,
        /// Rational coordinates h_1, ..., h_l, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        h: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in invariant suites.
    Selftest {
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Scalar,
    Matrix,
    Both,
}

fn parse_type(s: &str) -> Result<GroupType, String> {
    s.parse().map_err(|e: chevgauge::Error| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] chevgauge::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(chevgauge::Error::InvalidRank(_) | chevgauge::Error::Parse(_)) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}
