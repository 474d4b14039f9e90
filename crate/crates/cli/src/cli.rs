//! Command line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Arity n of the n-ary operation (n ≥ 2)
    #[arg(long)]
    pub n: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(
    name = "nary-ell",
    version,
    about = "Explore n-ary elliptic groups and rings over Z, Z/m and Z[1/(n+1)]",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// List the ∘-primes with norm magnitude up to a bound
    Primes {
        #[command(flatten)]
        common: Common,
        /// Largest norm magnitude to include
        #[arg(long)]
        bound: u64,
    },
    /// Factor an element of nEll(Z) into irreducibles
    Factor {
        #[command(flatten)]
        common: Common,
        /// The element to factor
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Also enumerate every factorization, not just the greedy one
        #[arg(long)]
        all: bool,
        /// Cap on the number of factorizations listed with --all
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Order and representatives of the n-ary class group
    Classgroup {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the ∘-prime enumeration against a classical sieve
    Dirichlet {
        #[command(flatten)]
        common: Common,
        /// Largest norm magnitude to include
        #[arg(long)]
        bound: u64,
    },
    /// Run the constructive Euclid argument on a list of irreducibles
    Euclid {
        #[command(flatten)]
        common: Common,
        /// Seed irreducibles (integers; may be empty)
        #[arg(allow_hyphen_values = true)]
        seeds: Vec<String>,
    },
    /// Check EG1, EG2, EG3 and distributivity on nEll(Z/m)
    Axioms {
        #[command(flatten)]
        common: Common,
        /// Modulus of the finite carrier
        #[arg(long = "mod")]
        modulus: u64,
        /// Exhaustive-enumeration cutoff on the tuple-space size
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        /// RNG seed for sampled checks
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare nEll(Z) with nEll(Z[1/(n+1)]), or print a finite ∘ table
    Table {
        #[command(flatten)]
        common: Common,
        /// Render the ∘ table of nEll(Z/m) instead of the comparison
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
}

impl Cmd {
    pub fn common(&self) -> &Common {
        match self {
            Cmd::Primes { common, .. }
            | Cmd::Factor { common, .. }
            | Cmd::Classgroup { common }
            | Cmd::Dirichlet { common, .. }
            | Cmd::Euclid { common, .. }
            | Cmd::Axioms { common, .. }
            | Cmd::Table { common, .. } => common,
        }
    }
}
