//! Normalized harmonic-oscillator eigenfunctions.
//!
//! φ_n(X) = e^{-X²/(2a²)} H_n(X/a) / (π^{1/4} √(2ⁿ n!) √a) is evaluated with
//! the three-term recurrence on the *normalized* functions
//!
//! ```text
//! h_0(u) = π^{-1/4} e^{-u²/2},   h_1(u) = √2 u h_0(u),
//! h_n(u) = u √(2/n) h_{n-1}(u) − √((n−1)/n) h_{n-2}(u),
//! ```
//!
//! never through raw Hermite polynomials, whose factorial normalization
//! overflows near n ≈ 85.

/// π^{-1/4}
const PI_QUARTER_INV: f64 = 0.751_125_544_464_942_5;

/// Normalized oscillator eigenfunction φ_n(x) for length scale `a`.
pub fn hermite_phi(n: usize, x: f64, a: f64) -> f64 {
    debug_assert!(a > 0.0);
    let u = x / a;
    let h0 = PI_QUARTER_INV * (-0.5 * u * u).exp();
    let scale = a.sqrt();
    if n == 0 {
        return h0 / scale;
    }
    let mut prev = h0;
    let mut cur = std::f64::consts::SQRT_2 * u * h0;
    for k in 2..=n {
        let kf = k as f64;
        let next = u * (2.0 / kf).sqrt() * cur - ((kf - 1.0) / kf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur / scale
}

/// All of φ_0(x) .. φ_{n_max}(x) in one recurrence pass.
pub fn hermite_phi_upto(n_max: usize, x: f64, a: f64, out: &mut Vec<f64>) {
    out.clear();
    let u = x / a;
    let scale = a.sqrt();
    let h0 = PI_QUARTER_INV * (-0.5 * u * u).exp();
    out.push(h0 / scale);
    if n_max == 0 {
        return;
    }
    let mut prev = h0;
    let mut cur = std::f64::consts::SQRT_2 * u * h0;
    out.push(cur / scale);
    for k in 2..=n_max {
        let kf = k as f64;
        let next = u * (2.0 / kf).sqrt() * cur - ((kf - 1.0) / kf).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur / scale);
    }
}

/// Exact derivative ∂_X φ_n = (√n φ_{n−1} − √(n+1) φ_{n+1}) / (a√2).
pub fn hermite_dphi(n: usize, x: f64, a: f64) -> f64 {
    let lower = if n >= 1 {
        (n as f64).sqrt() * hermite_phi(n - 1, x, a)
    } else {
        0.0
    };
    let upper = ((n + 1) as f64).sqrt() * hermite_phi(n + 1, x, a);
    (lower - upper) / (a * std::f64::consts::SQRT_2)
}
