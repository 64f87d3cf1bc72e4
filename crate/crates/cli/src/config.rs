use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use quon_core::scalar::{parse_rational, rational_text};

/// Exact computations for the energy operator of particles with infinite
/// statistics.
#[derive(Debug, Parser)]
#[command(name = "quon", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Number of particles (size of the symmetric group).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// `symbolic`, or an exact rational `a/b`.
    #[arg(
        long,
        global = true,
        default_value = "symbolic",
        allow_hyphen_values = true
    )]
    pub q: QMode,
    /// Seed for randomized checks; echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Allow symbolic n = 5 for `coeffs --method product` and `verify remark1`
    /// (about a minute instead of milliseconds).
    #[arg(long, global = true)]
    pub long: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Zagier matrix A_n(q), optionally with its inverse.
    Matrix {
        #[arg(long)]
        inverse: bool,
    },
    /// Energy-operator coefficients c_i(q, π) for the n-particle term.
    Coeffs {
        #[arg(long, value_enum, default_value_t = MethodArg::Product)]
        method: MethodArg,
    },
    /// Check one of the claims at the given n and q.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Time build/det/invert/coeffs for n = 2..N.
    Bench,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Product,
    Explicit,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Det,
    Eigen,
    Remark1,
    Greenberg,
    Integrality,
    Rp,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Det => "det",
            Check::Eigen => "eigen",
            Check::Remark1 => "remark1",
            Check::Greenberg => "greenberg",
            Check::Integrality => "integrality",
            Check::Rp => "rp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QMode {
    Symbolic,
    Rational(BigRational),
}

impl FromStr for QMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(QMode::Symbolic);
        }
        let v = parse_rational(s).map_err(|e| e.to_string())?;
        let one = BigRational::from_integer(1.into());
        if v == one || v == -one {
            return Err(format!("q = {s} is excluded: Δ_n vanishes at q = ±1"));
        }
        Ok(QMode::Rational(v))
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Symbolic => write!(f, "symbolic"),
            QMode::Rational(v) => write!(f, "{}", rational_text(v)),
        }
    }
}

/// Largest n accepted by `bench`; the matrix has n! rows and n = 7 is out of
/// reach for exact elimination on a desktop.
pub const BENCH_MAX_N: usize = 6;

/// Inclusive upper bound on n for a command in a q mode.
pub fn max_n(command: &Command, symbolic: bool, long: bool) -> usize {
    let opt_in = matches!(
        command,
        Command::Coeffs {
            method: MethodArg::Product
        } | Command::Verify {
            check: Check::Remark1
        }
    );
    if symbolic && long && opt_in {
        return 5;
    }
    match (command, symbolic) {
        (Command::Matrix { inverse: false }, _) => 6,
        (Command::Matrix { inverse: true }, true) => 4,
        (Command::Matrix { inverse: true }, false) => 5,
        (Command::Coeffs { .. }, true) => 4,
        (Command::Coeffs { .. }, false) => 5,
        (Command::Verify { check }, s) => match (check, s) {
            (Check::Det, true) => 5,
            (Check::Det, false) => 6,
            (Check::Eigen, true) => 3,
            (Check::Eigen, false) => 4,
            (Check::Remark1 | Check::Rp, true) => 4,
            (Check::Remark1 | Check::Rp, false) => 5,
            (Check::Greenberg, _) => 4,
            (Check::Integrality, _) => 4,
        },
        (Command::Bench, _) => BENCH_MAX_N,
    }
}
