//! First-order-in-ε corrections to the Landau eigenstates.
//!
//! The matrix elements of ℋ⁽¹⁾ between order-0 eigenstates close in a
//! three-case form that vanishes unless n′ ∈ {n−2, n, n+2}, so the
//! perturbation sums collapse to at most five terms. First-order energy
//! shifts vanish identically; only the eigenfunctions move.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hermite::{hermite_dphi, hermite_phi};
use crate::landau::{
    eigenstate0_expansion, guiding_center, landau_energy0, oscillator_length,
    spin_coefficients, LandauEigenstate, LandauLabel, StateOrder,
};
use crate::params::Sign;
use crate::xgrid::XGrid;

/// Which eigenstate order an operation should build or compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionOrder {
    Zero,
    First,
}

/// Closed-form matrix element ⟨l′|ℋ⁽¹⁾|l⟩.
///
/// With s = sgn(B), a = 1/√|B|, and (α₀, β₀) = (0, 1) extending the spinor
/// coefficients to the ground state:
///
/// ```text
/// n′ = n−2:  s·√(n−1)·[ (iB/2)(α′*α√n′ − β′*β√n) + (m/(a√2))·β′*α ]
/// n′ = n  :  −s·(m√n/(a√2))·(α′*β + β′*α)
/// n′ = n+2:  s·√(n+1)·[ (iB/2)(−α′*α√n + β′*β√n′) + (m/(a√2))·α′*β ]
/// otherwise: 0
/// ```
pub fn matrix_element_h1(
    l_prime: LandauLabel,
    l: LandauLabel,
    b: f64,
    m: f64,
) -> Result<C64> {
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    let a = oscillator_length(b)?;
    let s = b.signum();
    let (alpha_p, beta_p) = spin_coefficients(l_prime, b, m)?;
    let (alpha, beta) = spin_coefficients(l, b, m)?;
    let np = l_prime.n() as f64;
    let n = l.n() as f64;
    let ib2 = C64::new(0.0, b / 2.0);
    let mor = m / (a * std::f64::consts::SQRT_2);
    let value = if l_prime.n() + 2 == l.n() {
        s * (n - 1.0).sqrt()
            * (ib2 * (alpha_p.conj() * alpha * np.sqrt() - beta_p.conj() * beta * n.sqrt())
                + mor * beta_p.conj() * alpha)
    } else if l_prime.n() == l.n() {
        -s * (m * n.sqrt() / (a * std::f64::consts::SQRT_2))
            * (alpha_p.conj() * beta + beta_p.conj() * alpha)
    } else if l_prime.n() == l.n() + 2 {
        s * (n + 1.0).sqrt()
            * (ib2 * (-alpha_p.conj() * alpha * n.sqrt() + beta_p.conj() * beta * np.sqrt())
                + mor * alpha_p.conj() * beta)
    } else {
        return Ok(C64::default());
    };
    Ok(value)
}

/// ⟨l′|ℋ⁽¹⁾|l⟩ by direct lattice quadrature: both states and the pointwise
/// action of ℋ⁽¹⁾ are built from φ_n and its exact derivative, with no use of
/// the closed-form coefficient algebra. Serves as the independent oracle.
pub fn matrix_element_h1_quadrature(
    l_prime: LandauLabel,
    l: LandauLabel,
    b: f64,
    m: f64,
    grid: &XGrid,
) -> Result<C64> {
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    let a = oscillator_length(b)?;
    // ℋ¹ = [[iB(1/2 + u∂), −m∂], [m∂, −iB(1/2 + u∂)]] drags in φ_{n+2}
    let top = l.n().max(l_prime.n()) as usize + 2;
    grid.check_oscillator_tail(top, a, 0.0)?;

    // pointwise components of Φ_l and its derivative (K = 0; the element is
    // K-independent because the integrand only sees u = X − χ)
    let (alpha, beta) = spin_coefficients(l, b, m)?;
    let (alpha_p, beta_p) = spin_coefficients(l_prime, b, m)?;
    let component = |coef: C64, idx: Option<u32>, x: f64, d: bool| -> C64 {
        match idx {
            None => C64::default(),
            Some(k) => {
                let v = if d {
                    hermite_dphi(k as usize, x, a)
                } else {
                    hermite_phi(k as usize, x, a)
                };
                coef * v
            }
        }
    };
    // (index, coefficient) of the (b₋, b₊) components for each label
    let layout = |label: LandauLabel, al: C64, be: C64| -> [(Option<u32>, C64); 2] {
        match label {
            LandauLabel::Ground => {
                if b > 0.0 {
                    [(None, C64::default()), (Some(0), C64::new(1.0, 0.0))]
                } else {
                    [(Some(0), C64::new(1.0, 0.0)), (None, C64::default())]
                }
            }
            LandauLabel::Excited { n, .. } => {
                if b > 0.0 {
                    [(Some(n - 1), al), (Some(n), be)]
                } else {
                    [(Some(n), be), (Some(n - 1), al)]
                }
            }
        }
    };
    let lay_l = layout(l, alpha, beta);
    let lay_p = layout(l_prime, alpha_p, beta_p);

    let ib = C64::new(0.0, b);
    let mut acc = C64::default();
    for x in grid.xs() {
        let fm = component(lay_l[0].1, lay_l[0].0, x, false);
        let fp = component(lay_l[1].1, lay_l[1].0, x, false);
        let dfm = component(lay_l[0].1, lay_l[0].0, x, true);
        let dfp = component(lay_l[1].1, lay_l[1].0, x, true);
        let h_m = ib * (0.5 * fm + x * dfm) - m * dfp;
        let h_p = m * dfm - ib * (0.5 * fp + x * dfp);
        let gm = component(lay_p[0].1, lay_p[0].0, x, false);
        let gp = component(lay_p[1].1, lay_p[1].0, x, false);
        acc += gm.conj() * h_m + gp.conj() * h_p;
    }
    Ok(acc * grid.epsilon())
}

/// The l′ ≠ l levels that can contribute to Δ⁽¹⁾_l under the selection rule,
/// paired with their coefficients ⟨l′|ℋ⁽¹⁾|l⟩ / (E_l − E_{l′}).
pub fn first_order_coefficients(
    label: LandauLabel,
    b: f64,
    m: f64,
) -> Result<Vec<(LandauLabel, C64)>> {
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    let mut partners: Vec<LandauLabel> = Vec::new();
    match label {
        LandauLabel::Ground => {
            for lam in [Sign::Plus, Sign::Minus] {
                partners.push(LandauLabel::excited(lam, 2)?);
            }
        }
        LandauLabel::Excited { lambda, n } => {
            for lam in [Sign::Plus, Sign::Minus] {
                if n >= 3 {
                    partners.push(LandauLabel::excited(lam, n - 2)?);
                }
                partners.push(LandauLabel::excited(lam, n + 2)?);
            }
            if n == 2 {
                partners.push(LandauLabel::Ground);
            }
            partners.push(LandauLabel::Excited { lambda: lambda.flipped(), n });
        }
    }
    let e = landau_energy0(label, b, m)?;
    let mut out = Vec::with_capacity(partners.len());
    for lp in partners {
        let ep = landau_energy0(lp, b, m)?;
        let gap = e - ep;
        // For B ≠ 0 all gaps are strictly nonzero: |E| = √(m² + 2|B|n) is
        // strictly increasing in n, so levels with different n never collide,
        // (λ, n) vs (−λ, n) differ by 2|E| > 0, and the ground level has
        // |E| = m < √(m² + 2|B|n′) for every partner n′ ≥ 1.
        assert!(
            gap != 0.0,
            "degenerate perturbation denominator for {label} vs {lp} at B={b}, m={m}"
        );
        let me = matrix_element_h1(lp, label, b, m)?;
        out.push((lp, me / gap));
    }
    Ok(out)
}

/// Order-1 eigenstate Φ⁽¹⁾ = Φ⁽⁰⁾ + ε·Δ⁽¹⁾ sampled on `grid`.
///
/// Δ⁽¹⁾ is the exact five-term (or shorter) selection-rule sum, orthogonal to
/// Φ⁽⁰⁾ at the same K; the order-1 energy equals the order-0 energy.
pub fn first_order_state(
    label: LandauLabel,
    k: f64,
    b: f64,
    m: f64,
    epsilon: f64,
    grid: &XGrid,
) -> Result<LandauEigenstate> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidParameter("epsilon must be > 0"));
    }
    let a = oscillator_length(b)?;
    let chi = guiding_center(k, b)?;
    grid.check_oscillator_tail(label.n() as usize + 2, a, chi)?;
    let mut pair = eigenstate0_expansion(label, k, b, m)?;
    for (lp, c) in first_order_coefficients(label, b, m)? {
        let partner = eigenstate0_expansion(lp, k, b, m)?;
        pair.add_scaled(&partner, c * epsilon);
    }
    let (minus, plus) = pair.sample_on(grid);
    let (alpha, beta) = spin_coefficients(label, b, m)?;
    Ok(LandauEigenstate {
        label,
        k,
        energy: landau_energy0(label, b, m)?, // first-order shift vanishes
        alpha,
        beta,
        order: StateOrder::One { epsilon },
        grid: grid.clone(),
        minus,
        plus,
    })
}
