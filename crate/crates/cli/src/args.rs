//! Command-line surface. Exit codes: 0 success, 1 validation error,
//! 2 numerical-guard failure (tail/branch/memory/wrap), 3 verify failure.

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "dtqw", version, about = "Magnetic 2D quantum-walk experiments", max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for the lattice kernels (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Refuse to allocate lattices with more cells than this
    #[arg(long, global = true, default_value_t = 33_554_432)]
    pub max_grid_cells: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Landau-level energies over a magnetic-field sweep
    Energies(EnergiesArgs),
    /// Eigenstate density profiles (order 0) or first-order density
    /// differences (order 1)
    Profiles(ProfilesArgs),
    /// δ distances of the order-0/1 eigenstates over a list of step sizes,
    /// with fitted log-log slopes
    Scaling(ScalingArgs),
    /// Time series of the p- and q-spreads of a localized initial state
    Spread(SpreadArgs),
    /// Full probability density at the final step
    Density(DensityArgs),
    /// Run the full invariant suite at small scale
    Verify,
}

#[derive(Debug, Args, Clone)]
pub struct EnergiesArgs {
    /// Field values (comma-separated); default sweeps ±[0.05, 2.0] in 0.05
    /// steps, skipping zero
    #[arg(long, value_delimiter = ',')]
    pub b_field: Vec<f64>,

    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,

    /// Highest excited index n to tabulate
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,

    /// Output CSV path (`-` for stdout)
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args, Clone)]
pub struct ProfilesArgs {
    /// Level labels: `ground`, `+:n`, `-:n` (comma-separated)
    #[arg(long, value_delimiter = ',', default_value = "ground,+:1,+:4")]
    pub label: Vec<String>,

    #[arg(long, default_value_t = 0.0)]
    pub k: f64,

    #[arg(long, default_value_t = 1.0)]
    pub b_field: f64,

    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,

    /// Step size: the X sampling interval, and the perturbation strength at
    /// order 1
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,

    /// 0 → densities of the order-0 states; 1 → density differences of the
    /// order-1 states against order 0
    #[arg(long, default_value_t = 0)]
    pub order: u8,

    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args, Clone)]
pub struct ScalingArgs {
    #[arg(long, value_delimiter = ',', default_value = "ground,+:1,+:2,+:3")]
    pub label: Vec<String>,

    /// Step sizes to sweep (comma-separated)
    #[arg(long, value_delimiter = ',', default_value = "0.02,0.04,0.08,0.16,0.32")]
    pub epsilon: Vec<f64>,

    #[arg(long, default_value_t = 1.0)]
    pub b_field: f64,

    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,

    #[arg(long, default_value_t = 0.0)]
    pub k: f64,

    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args, Clone)]
pub struct SpreadArgs {
    /// Initial Gaussian width (0 = delta state)
    #[arg(long, default_value_t = 0.0)]
    pub width: f64,

    /// Field values (comma-separated)
    #[arg(long, value_delimiter = ',', default_value = "0,0.01,0.04,0.16")]
    pub b_field: Vec<f64>,

    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,

    #[arg(long, default_value_t = 500)]
    pub steps: usize,

    /// Lattice half-extent; default steps+1 keeps the light cone off the
    /// boundary
    #[arg(long)]
    pub half_extent: Option<usize>,

    /// Accept a half-extent that the light-cone guard would refuse
    #[arg(long, default_value_t = false)]
    pub allow_wrap: bool,

    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args, Clone)]
pub struct DensityArgs {
    /// Initial Gaussian width (0 = delta state)
    #[arg(long, default_value_t = 0.0)]
    pub width: f64,

    #[arg(long, default_value_t = 0.0)]
    pub b_field: f64,

    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,

    #[arg(long, default_value_t = 500)]
    pub steps: usize,

    /// Lattice half-extent; default steps+1
    #[arg(long)]
    pub half_extent: Option<usize>,

    /// Accept a half-extent that the light-cone guard would refuse
    #[arg(long, default_value_t = false)]
    pub allow_wrap: bool,

    #[arg(long, default_value = "-")]
    pub out: String,
}
