//! The X-sampling grid used by all fixed-K computations.

use crate::error::{Error, Result};
use crate::hermite::hermite_phi;

/// Every constructed basis function must fall below this amplitude at the two
/// extreme grid points; open-boundary spectral computations rely on it.
pub const TAIL_BOUND: f64 = 1e-12;

/// Uniform grid of points X_p = p·ε, p ∈ [p_min, p_min + n − 1].
///
/// Centered grids (p ∈ [−half_p, half_p]) are the common case; asymmetric
/// ranges appear when a lattice with an even site count is transformed.
#[derive(Debug, Clone, PartialEq)]
pub struct XGrid {
    epsilon: f64,
    p_min: i64,
    n: usize,
}

impl XGrid {
    pub fn centered(epsilon: f64, half_p: usize) -> Self {
        assert!(epsilon > 0.0 && half_p >= 1);
        Self { epsilon, p_min: -(half_p as i64), n: 2 * half_p + 1 }
    }

    pub fn with_range(epsilon: f64, p_min: i64, n: usize) -> Self {
        assert!(epsilon > 0.0 && n >= 1);
        Self { epsilon, p_min, n }
    }

    /// Centered grid sized so that oscillator states with Hermite index up to
    /// `n_max`, scale `a` and center `chi` satisfy the tail bound.
    ///
    /// Starts from half-width max(6, 3√(2·n_max+1))·a + |chi| and grows in
    /// a/2 increments until the explicit edge check passes (the closed-form
    /// width alone undershoots the bound for small n_max).
    pub fn for_oscillator(epsilon: f64, n_max: usize, a: f64, chi: f64) -> Self {
        assert!(epsilon > 0.0 && a > 0.0);
        let base = 6.0f64.max(3.0 * ((2 * n_max + 1) as f64).sqrt()) * a + chi.abs();
        let mut half = (base / epsilon).ceil() as usize;
        let grow = ((0.5 * a) / epsilon).ceil() as usize;
        for _ in 0..200 {
            let grid = Self::centered(epsilon, half.max(1));
            if grid.check_oscillator_tail(n_max, a, chi).is_ok() {
                return grid;
            }
            half += grow.max(1);
        }
        unreachable!("oscillator tail bound not reached after 200 widenings");
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn p_min(&self) -> i64 {
        self.p_min
    }

    pub fn p_max(&self) -> i64 {
        self.p_min + self.n as i64 - 1
    }

    /// Coordinate of the i-th sample.
    pub fn x(&self, i: usize) -> f64 {
        (self.p_min + i as i64) as f64 * self.epsilon
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    /// Half-width in X units (distance from 0 to the farther edge).
    pub fn half_width(&self) -> f64 {
        (self.p_min.abs().max(self.p_max().abs())) as f64 * self.epsilon
    }

    /// Verify that φ_k (k ≤ n_max, scale `a`, centered at `chi`) is below the
    /// tail bound at both edges. The highest index has the widest support, so
    /// checking it alone suffices.
    pub fn check_oscillator_tail(&self, n_max: usize, a: f64, chi: f64) -> Result<()> {
        for edge in [self.p_min as f64 * self.epsilon, self.p_max() as f64 * self.epsilon] {
            let amp = hermite_phi(n_max, edge - chi, a).abs();
            if amp >= TAIL_BOUND {
                return Err(Error::TailTooLarge { amplitude: amp, bound: TAIL_BOUND });
            }
        }
        Ok(())
    }

    /// Verify sampled state components against the tail bound directly.
    pub fn check_state_tail(&self, components: &[&[num_complex::Complex64]]) -> Result<()> {
        for comp in components {
            assert_eq!(comp.len(), self.n);
            for &edge in &[comp[0], comp[self.n - 1]] {
                let amp = edge.norm();
                if amp >= TAIL_BOUND {
                    return Err(Error::TailTooLarge { amplitude: amp, bound: TAIL_BOUND });
                }
            }
        }
        Ok(())
    }
}
