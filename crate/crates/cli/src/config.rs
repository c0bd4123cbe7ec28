use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Experiment {
    IntGcd {
        a: String,
        b: String,
        prime_bound: Option<u64>,
    },
    PolyGcd {
        f: String,
        g: String,
        stability_window: Option<u64>,
    },
    MatGcd {
        matrix: String,
    },
    Hyperbolic {
        matrix: String,
    },
    PolyMat {
        matrix: String,
        stability_window: Option<u64>,
    },
    Cyclo {
        p: u32,
        unit: Option<u32>,
        coeffs: Option<String>,
    },
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::IntGcd { .. } => "intgcd",
            Experiment::PolyGcd { .. } => "polygcd",
            Experiment::MatGcd { .. } => "matgcd",
            Experiment::Hyperbolic { .. } => "hyperbolic",
            Experiment::PolyMat { .. } => "polymat",
            Experiment::Cyclo { .. } => "cyclo",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub k_max: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub workers: usize,
}

#[derive(Parser, Debug)]
#[command(name = "gcditer", version, about = "Exact experiments on gcd(a^k-1, b^k-1) and its analogues")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Largest exponent k to scan.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "GCDITER_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// gcd(a^k - 1, b^k - 1) over the integers.
    Intgcd {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Cross-check against multiplicative orders of primes up to this bound.
        #[arg(long)]
        prime_bound: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// gcd(f^k - 1, g^k - 1) over Q[t] and its torsion levels.
    Polygcd {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        stability_window: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Contents of A^k - I for an integer matrix.
    Matgcd {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Growth of gcd(A^k - I) for a hyperbolic matrix in SL_2(Z).
    Hyperbolic {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Contents of A^k - I for a matrix over Q[t].
    Polymat {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        stability_window: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Primitivity of powers of multiplication matrices of units in Z[ζ_p].
    #[command(group = clap::ArgGroup::new("element").required(true).args(["unit", "coeffs"]))]
    Cyclo {
        #[arg(long)]
        p: u32,
        /// Use the unit 1 + ζ + … + ζ^(a-1).
        #[arg(long)]
        unit: Option<u32>,
        /// Comma-separated coefficients on 1, ζ, …, ζ^(p-2).
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

impl From<Cli> for ExperimentConfig {
    fn from(cli: Cli) -> Self {
        let (experiment, common) = match cli.command {
            Command::Intgcd { a, b, prime_bound, common } => {
                (Experiment::IntGcd { a, b, prime_bound }, common)
            }
            Command::Polygcd { f, g, stability_window, common } => {
                (Experiment::PolyGcd { f, g, stability_window }, common)
            }
            Command::Matgcd { matrix, common } => (Experiment::MatGcd { matrix }, common),
            Command::Hyperbolic { matrix, common } => (Experiment::Hyperbolic { matrix }, common),
            Command::Polymat { matrix, stability_window, common } => {
                (Experiment::PolyMat { matrix, stability_window }, common)
            }
            Command::Cyclo { p, unit, coeffs, common } => {
                (Experiment::Cyclo { p, unit, coeffs }, common)
            }
        };
        ExperimentConfig {
            experiment,
            k_max: common.k_max,
            format: common.format,
            out: common.out,
            workers: common.workers as usize,
        }
    }
}
