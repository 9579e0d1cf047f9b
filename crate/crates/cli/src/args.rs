use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cw-glt",
    version,
    about = "Spectra and GLT symbol analysis of the quantum Curie-Weiss model",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Coupling Γ > 0.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub gamma: f64,
    /// Transverse field B.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub bfield: f64,
    /// Eigensolver accuracy target.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Output file (standard output when absent).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Output encoding; `compare` defaults to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Print errors to stderr as a JSON object.
    #[arg(long, global = true)]
    pub json_errors: bool,
    /// Regenerate the tolerance fixtures file at PATH and exit.
    #[arg(long, value_name = "PATH")]
    pub fixtures: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// The `(N+1)`-dimensional symmetric-subspace model.
    Restricted,
    /// All `2^N` eigenvalues, grouped by spin sector with weights.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Functional {
    /// F(y) = y².
    Square,
    /// F(y) = 1.
    One,
}

#[derive(Debug, Clone, PartialEq, clap::Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1000)]
    pub grid_nx: usize,
    #[arg(long, default_value_t = 1000)]
    pub grid_ntheta: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues as `index,eigenvalue,weight`.
    Spectrum {
        #[arg(long, value_enum, default_value_t = Mode::Restricted)]
        mode: Mode,
        /// Number of sites N.
        #[arg(long)]
        size: u32,
    },
    /// Monotone rearrangement of the symbol as `t,psi`.
    #[command(allow_negative_numbers = true)]
    Rearrange {
        #[command(flatten)]
        grid: GridArgs,
        /// Emit ψ(k/(K+1)), k = 1..K, instead of every sorted sample.
        #[arg(long, value_name = "K")]
        points: Option<usize>,
        /// Rearrange the constant symbol C instead.
        #[arg(long, value_name = "C")]
        constant_symbol: Option<f64>,
    },
    /// Distances between the restricted spectrum and the rearranged symbol.
    Compare {
        /// Number of sites N.
        #[arg(long)]
        size: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Extreme-eigenvalue convergence table.
    #[command(allow_negative_numbers = true)]
    Extremal {
        /// Matrix sizes N+1, comma separated (default 40,80,160,320).
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Reference minimum m (default: minimum of the symbol).
        #[arg(long)]
        min_ref: Option<f64>,
        /// Reference maximum M (default: maximum of the symbol).
        #[arg(long)]
        max_ref: Option<f64>,
        /// Use |λ_min - m| and |M - λ_max| instead of refusing negative gaps.
        #[arg(long)]
        abs_gaps: bool,
    },
    /// Schatten-2 test and mean of F over the full spectrum, per N.
    Zerodist {
        /// Numbers of sites, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Functional::Square)]
        functional: Functional,
    },
    /// The sector measure ν_N as `u,mass`.
    Nu {
        /// Number of sites N.
        #[arg(long)]
        size: u32,
    },
    /// Berezin-symbol deviation of the top spin sector, per N.
    Berezin {
        /// Numbers of sites, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
        /// Polar nodes ϑ_i = πi/(n-1), i = 0..n-1.
        #[arg(long, default_value_t = 65)]
        sphere_ntheta: usize,
        /// Azimuthal nodes φ_j = 2πj/n.
        #[arg(long, default_value_t = 64)]
        sphere_nphi: usize,
    },
}
