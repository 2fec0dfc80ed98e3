use thiserror::Error;

/// Errors surfaced by the walk, spectral and propagator layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    /// The operation needs a nonzero magnetic field (guiding center,
    /// Landau spectra, perturbative corrections).
    #[error("magnetic field must be nonzero for this operation")]
    ZeroField,

    /// A constructed state does not decay below the tail bound at the grid
    /// edges, so open-boundary spectral computations are not licensed.
    #[error("edge amplitude {amplitude:.3e} exceeds the tail bound {bound:.0e}; widen the grid")]
    TailTooLarge { amplitude: f64, bound: f64 },

    /// Evolving for this many steps could wrap the light cone around the
    /// periodic boundary.
    #[error("light cone may wrap: {steps} steps on a grid with clearance {clearance} sites")]
    LightConeWrap { steps: usize, clearance: i64 },

    /// An eigenphase of the one-step operator sits too close to the branch
    /// cut of the principal logarithm.
    #[error("matrix-log branch ambiguity: eigenphase {phase:.8} within {margin:.0e} of ±π")]
    BranchAmbiguity { phase: f64, margin: f64 },

    /// Fewer than 3 points, or nonpositive values, in a log-log fit.
    #[error("scaling fit needs at least 3 strictly positive (epsilon, delta) pairs")]
    DegenerateFit,

    /// Requested lattice exceeds the configured cell cap.
    #[error("grid of {cells} cells exceeds the configured cap of {cap}")]
    GridTooLarge { cells: usize, cap: usize },

    /// A value that must be written out is not finite.
    #[error("non-finite value in column `{column}`")]
    NonFinite { column: String },
}

pub type Result<T> = std::result::Result<T, Error>;
