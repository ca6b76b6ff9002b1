use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "shannon-lattice",
    version,
    about = "Exact lattice certificates for independent sets in strong powers of fraction graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Branch-and-bound node limit for MIS searches
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub budget_nodes: u64,
    /// Wall-clock limit for MIS searches, in seconds
    #[arg(long, global = true, default_value_t = 600)]
    pub budget_secs: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (default: csv for scan and limit, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized sweeps and samples
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest matrix order for the principal-minor test
    #[arg(long, global = true, default_value_t = 20)]
    pub p0_cap: usize,
    /// Largest subgroup or quotient enumerated explicitly
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub enum_cap: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    pub n: u32,
    pub k: u64,
    pub b: u64,
    pub r: u64,
    pub s: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build A and B for (n, k, b, r, s) and certify the subgroup bound
    Construct(ParamArgs),
    /// Verify a family member, or run the randomized identity suite
    Verify {
        /// n k b r s; omit to run the identity suite
        #[arg(num_args = 5, value_names = ["N", "K", "B", "R", "S"])]
        params: Option<Vec<u64>>,
        /// Random instances per identity
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Emit X and Y with their determinant and factorization checks
    ConstructXy(ParamArgs),
    /// Bound α(E_{p/q}^⊠n) through the quotient by a subgroup
    Quotient {
        p: u64,
        q: u64,
        power: usize,
        /// Generators such as "1,2,3" or "1,2,3;0,1,1"
        generators: String,
    },
    /// Maximum independent set of E_{p/q}^⊠n or of a DIMACS graph
    Mis {
        #[arg(num_args = 3, value_names = ["P", "Q", "N"], conflicts_with = "dimacs")]
        graph: Option<Vec<u64>>,
        /// Read an edge-format DIMACS file instead
        #[arg(long)]
        dimacs: Option<PathBuf>,
        /// Search every root branch even for fraction-graph powers
        #[arg(long)]
        general: bool,
    },
    /// Verify the perturbed pair (A', B') for dimension d and parameter ℓ
    Bohman { d: u32, ell: u64 },
    /// Sweep parameters and emit certified points (p/q, p^{1/n})
    Scan {
        /// Ratio window "lo:hi"
        #[arg(long, default_value = "2:7")]
        window: String,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 20)]
        k_max: u64,
        #[arg(long, default_value_t = 4)]
        b_max: u64,
        #[arg(long, default_value_t = 16)]
        s_max: u64,
        /// Fraction of points re-certified
        #[arg(long, default_value_t = 0.05)]
        spot_fraction: f64,
    },
    /// Convergence table toward targets x
    Limit {
        #[arg(long, default_value = "1")]
        epsilon: String,
        #[arg(required = true)]
        x: Vec<String>,
    },
    /// Certify matrices read from files against p and q
    VerifyMatrix {
        a_file: PathBuf,
        b_file: PathBuf,
        p: String,
        q: String,
    },
    /// Largest independent subgroup of E_{p/q}^⊠n with at most two generators
    AlphaGrp { p: u64, q: u64, n: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Construct(_) => "construct",
            Command::Verify { .. } => "verify",
            Command::ConstructXy(_) => "construct-xy",
            Command::Quotient { .. } => "quotient",
            Command::Mis { .. } => "mis",
            Command::Bohman { .. } => "bohman",
            Command::Scan { .. } => "scan",
            Command::Limit { .. } => "limit",
            Command::VerifyMatrix { .. } => "verify-matrix",
            Command::AlphaGrp { .. } => "alpha-grp",
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::Scan { .. } | Command::Limit { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}
