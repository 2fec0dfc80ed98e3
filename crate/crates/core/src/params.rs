//! Walk parameters, coin angles and coin matrices.

use std::f64::consts::FRAC_PI_4;

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Sign tag used for the coin angle θ± and for the level index λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The parameter triple (ε, B, m).
///
/// ε is the common dimensionless time and space step ΔT = ΔX = ΔY. The walk's
/// internal coin parameter ν is locked to ε and has no independent field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    epsilon: f64,
    b_field: f64,
    mass: f64,
}

impl PhysicalParams {
    pub fn new(epsilon: f64, b_field: f64, mass: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidParameter("epsilon must be finite and > 0"));
        }
        if !b_field.is_finite() {
            return Err(Error::InvalidParameter("b_field must be finite"));
        }
        if !mass.is_finite() || mass < 0.0 {
            return Err(Error::InvalidParameter("mass must be finite and >= 0"));
        }
        Ok(Self { epsilon, b_field, mass })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn b_field(&self) -> f64 {
        self.b_field
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// The walk parameter ν; identically equal to ε.
    pub fn nu(&self) -> f64 {
        self.epsilon
    }
}

/// Position-dependent coin angle α_p = ν² B p / 2, evaluated from the signed
/// site index.
pub fn angle_alpha(p: i64, params: &PhysicalParams) -> f64 {
    let nu = params.nu();
    nu * nu * params.b_field() * (p as f64) / 2.0
}

/// Mass coin angle θ± = ±π/4 − ν m / 2.
pub fn angle_theta(sign: Sign, params: &PhysicalParams) -> f64 {
    sign.value() * FRAC_PI_4 - params.nu() * params.mass() / 2.0
}

/// The two coin matrices
///
/// ```text
/// U(α,θ) = | e^{iα} cosθ    i e^{iα} sinθ |     V(α,θ) = | e^{iα} cosθ    i e^{-iα} sinθ |
///          | i e^{-iα} sinθ  e^{-iα} cosθ |              | i e^{iα} sinθ   e^{-iα} cosθ  |
/// ```
///
/// U transports along the p-direction, V along the q-direction. Both are
/// unitary for any real (α, θ).
pub fn coin_matrices(alpha: f64, theta: f64) -> (Matrix2<C64>, Matrix2<C64>) {
    let (c, s) = (theta.cos(), theta.sin());
    let ep = C64::from_polar(1.0, alpha);
    let em = ep.conj();
    let i = C64::i();
    let u = Matrix2::new(ep * c, i * ep * s, i * em * s, em * c);
    let v = Matrix2::new(ep * c, i * em * s, i * ep * s, em * c);
    (u, v)
}
