//! Simulator and spectral toolkit for a 2D discrete-time quantum walk coupled
//! to a uniform artificial magnetic field.
//!
//! The crate is organized around three layers:
//!
//! - [`walk`] — exact real-space lattice evolution of the two-component walk,
//!   with density and spread diagnostics and Gaussian/delta initial states;
//! - [`landau`] / [`perturb`] — Hermite-oscillator machinery at fixed
//!   wavenumber K: relativistic Landau levels, their eigenstates in the
//!   rotated spin basis, and the first-order-in-ε corrections;
//! - [`propagator`] — the exact fixed-K one-step operator, the discrete
//!   Fourier bridge between the two representations, the effective
//!   Hamiltonian via a matrix logarithm, and the δ validation metric with
//!   its ε-scaling fits.

pub mod error;
pub mod fit;
pub mod hermite;
pub mod landau;
pub mod norms;
pub mod params;
pub mod perturb;
pub mod propagator;
pub mod walk;
pub mod xgrid;

pub use error::{Error, Result};
pub use params::{angle_alpha, angle_theta, coin_matrices, PhysicalParams, Sign};
