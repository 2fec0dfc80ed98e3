//! Relativistic Landau levels of the walk's continuum Hamiltonian at fixed
//! wavenumber K, in the rotated spin basis (b₋, b₊).
//!
//! At fixed K the zeroth-order Hamiltonian
//!
//! ```text
//! ℋ⁽⁰⁾ = |  m                −i(∂_X + B(X−χ)) |        χ = −K/B
//!        |  i(−∂_X + B(X−χ))  −m              |
//! ```
//!
//! reduces, after squaring, to a 1D harmonic oscillator of pulsation 2|B| and
//! length a = 1/√|B| centered at the guiding center χ. Its eigenstates pair
//! two consecutive oscillator functions; the first-order step correction ℋ⁽¹⁾
//! lives in [`crate::perturb`].

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hermite::hermite_phi_upto;
use crate::norms::inner_product;
use crate::params::Sign;
use crate::xgrid::XGrid;

/// Level label: the ground state, or (λ, n) with λ = ± and n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LandauLabel {
    Ground,
    Excited { lambda: Sign, n: u32 },
}

impl LandauLabel {
    pub fn excited(lambda: Sign, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("excited levels need n >= 1"));
        }
        Ok(LandauLabel::Excited { lambda, n })
    }

    /// Oscillator index of the label (0 for the ground state).
    pub fn n(&self) -> u32 {
        match self {
            LandauLabel::Ground => 0,
            LandauLabel::Excited { n, .. } => *n,
        }
    }

    /// Label with λ flipped; the ground state maps to itself.
    pub fn lambda_flipped(&self) -> Self {
        match self {
            LandauLabel::Ground => LandauLabel::Ground,
            LandauLabel::Excited { lambda, n } => {
                LandauLabel::Excited { lambda: lambda.flipped(), n: *n }
            }
        }
    }
}

impl fmt::Display for LandauLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LandauLabel::Ground => write!(f, "ground"),
            LandauLabel::Excited { lambda: Sign::Plus, n } => write!(f, "+:{n}"),
            LandauLabel::Excited { lambda: Sign::Minus, n } => write!(f, "-:{n}"),
        }
    }
}

impl FromStr for LandauLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ground" {
            return Ok(LandauLabel::Ground);
        }
        let (sign, rest) = match s.split_once(':') {
            Some(("+", rest)) => (Sign::Plus, rest),
            Some(("-", rest)) => (Sign::Minus, rest),
            _ => return Err(Error::InvalidParameter("label must be `ground`, `+:n` or `-:n`")),
        };
        let n: u32 = rest
            .parse()
            .map_err(|_| Error::InvalidParameter("label index must be a positive integer"))?;
        LandauLabel::excited(sign, n)
    }
}

/// Guiding center χ(K, B) = −K/B of the fixed-K oscillator.
pub fn guiding_center(k: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(-k / b)
}

/// Oscillator length a = 1/√|B|.
pub fn oscillator_length(b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(1.0 / b.abs().sqrt())
}

/// Zeroth-order level energy: −sgn(B)·m for the ground state,
/// λ√(m² + 2|B|n) for excited states.
pub fn landau_energy0(label: LandauLabel, b: f64, m: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(match label {
        LandauLabel::Ground => -b.signum() * m,
        LandauLabel::Excited { lambda, n } => {
            lambda.value() * (m * m + 2.0 * b.abs() * n as f64).sqrt()
        }
    })
}

/// Spinor coefficients (α, β) of the level: (0, 1) for the ground state, and
/// for excited states
///
/// ```text
/// α = −i √(2|B|n / d),   β = (E − sgn(B)·m)/√d,   d = (E − sgn(B)·m)² + 2|B|n,
/// ```
///
/// so α is purely imaginary with negative imaginary part, β is real, and
/// |α|² + |β|² = 1 identically.
pub fn spin_coefficients(label: LandauLabel, b: f64, m: f64) -> Result<(C64, C64)> {
    if b == 0.0 {
        return Err(Error::ZeroField);
    }
    match label {
        LandauLabel::Ground => Ok((C64::default(), C64::new(1.0, 0.0))),
        LandauLabel::Excited { n, .. } => {
            let e = landau_energy0(label, b, m)?;
            let gap = e - b.signum() * m;
            let two_bn = 2.0 * b.abs() * n as f64;
            let d = gap * gap + two_bn;
            let alpha = C64::new(0.0, -(two_bn / d).sqrt());
            let beta = C64::new(gap / d.sqrt(), 0.0);
            Ok((alpha, beta))
        }
    }
}

/// Spinor expansion over oscillator eigenfunctions: component c = Σ_k coeff[k]·φ_k(X−center)
/// with a common length scale and center for both spin components.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitePair {
    pub scale: f64,
    pub center: f64,
    pub minus: Vec<C64>,
    pub plus: Vec<C64>,
}

impl HermitePair {
    pub fn zero(scale: f64, center: f64) -> Self {
        Self { scale, center, minus: Vec::new(), plus: Vec::new() }
    }

    pub fn max_index(&self) -> usize {
        self.minus.len().max(self.plus.len()).saturating_sub(1)
    }

    /// self += factor · other; panics on mismatched scale or center.
    pub fn add_scaled(&mut self, other: &HermitePair, factor: C64) {
        assert_eq!(self.scale, other.scale);
        assert_eq!(self.center, other.center);
        grow_to(&mut self.minus, other.minus.len());
        grow_to(&mut self.plus, other.plus.len());
        for (dst, src) in self.minus.iter_mut().zip(&other.minus) {
            *dst += factor * src;
        }
        for (dst, src) in self.plus.iter_mut().zip(&other.plus) {
            *dst += factor * src;
        }
    }

    /// Evaluate both components on a grid.
    pub fn sample_on(&self, grid: &XGrid) -> (Vec<C64>, Vec<C64>) {
        let top = self.max_index();
        let mut minus = Vec::with_capacity(grid.n_points());
        let mut plus = Vec::with_capacity(grid.n_points());
        let mut row = Vec::new();
        for x in grid.xs() {
            hermite_phi_upto(top, x - self.center, self.scale, &mut row);
            let mut vm = C64::default();
            for (c, phi) in self.minus.iter().zip(&row) {
                vm += c * phi;
            }
            let mut vp = C64::default();
            for (c, phi) in self.plus.iter().zip(&row) {
                vp += c * phi;
            }
            minus.push(vm);
            plus.push(vp);
        }
        (minus, plus)
    }
}

fn grow_to(v: &mut Vec<C64>, len: usize) {
    if v.len() < len {
        v.resize(len, C64::default());
    }
}

/// Coefficients of ∂_X f for f = Σ c_k φ_k: uses
/// ∂φ_k = (√k φ_{k−1} − √(k+1) φ_{k+1})/(a√2).
fn coeff_ddx(c: &[C64], a: f64) -> Vec<C64> {
    if c.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C64::default(); c.len() + 1];
    let s = 1.0 / (a * std::f64::consts::SQRT_2);
    for (k, &ck) in c.iter().enumerate() {
        if k >= 1 {
            out[k - 1] += ck * ((k as f64).sqrt() * s);
        }
        out[k + 1] -= ck * (((k + 1) as f64).sqrt() * s);
    }
    out
}

/// Coefficients of (X − center)·f: uses u·φ_k = (a/√2)(√k φ_{k−1} + √(k+1) φ_{k+1}).
fn coeff_mul_u(c: &[C64], a: f64) -> Vec<C64> {
    if c.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C64::default(); c.len() + 1];
    let s = a / std::f64::consts::SQRT_2;
    for (k, &ck) in c.iter().enumerate() {
        if k >= 1 {
            out[k - 1] += ck * ((k as f64).sqrt() * s);
        }
        out[k + 1] += ck * (((k + 1) as f64).sqrt() * s);
    }
    out
}

fn combine(
    a: Vec<C64>,
    fa: C64,
    b: Vec<C64>,
    fb: C64,
) -> Vec<C64> {
    let mut out = vec![C64::default(); a.len().max(b.len())];
    for (i, v) in a.into_iter().enumerate() {
        out[i] += fa * v;
    }
    for (i, v) in b.into_iter().enumerate() {
        out[i] += fb * v;
    }
    out
}

/// ℋ⁽⁰⁾ applied to an expansion, exactly, via the ladder recurrences.
pub fn apply_h0_expansion(state: &HermitePair, b: f64, m: f64) -> HermitePair {
    let a = state.scale;
    let i = C64::i();
    let mc = C64::new(m, 0.0);
    let bc = C64::new(b, 0.0);
    // out⁻ = m·f⁻ − i(∂ + B·u)·f⁺
    let shift_plus = combine(coeff_ddx(&state.plus, a), C64::new(1.0, 0.0), coeff_mul_u(&state.plus, a), bc);
    let minus = combine(state.minus.clone(), mc, shift_plus, -i);
    // out⁺ = i(−∂ + B·u)·f⁻ − m·f⁺
    let shift_minus = combine(coeff_ddx(&state.minus, a), C64::new(-1.0, 0.0), coeff_mul_u(&state.minus, a), bc);
    let plus = combine(shift_minus, i, state.plus.clone(), -mc);
    HermitePair { scale: a, center: state.center, minus, plus }
}

/// ℋ⁽¹⁾ applied to an expansion, exactly.
pub fn apply_h1_expansion(state: &HermitePair, b: f64, m: f64) -> HermitePair {
    let a = state.scale;
    let i = C64::i();
    let ib = i * b;
    let mc = C64::new(m, 0.0);
    let half = C64::new(0.5, 0.0);
    // out⁻ = iB(1/2 + u∂)·f⁻ − m ∂·f⁺
    let u_d_minus = coeff_mul_u(&coeff_ddx(&state.minus, a), a);
    let diag_minus = combine(state.minus.clone(), half, u_d_minus, C64::new(1.0, 0.0));
    let minus = combine(diag_minus, ib, coeff_ddx(&state.plus, a), -mc);
    // out⁺ = m ∂·f⁻ − iB(1/2 + u∂)·f⁺
    let u_d_plus = coeff_mul_u(&coeff_ddx(&state.plus, a), a);
    let diag_plus = combine(state.plus.clone(), half, u_d_plus, C64::new(1.0, 0.0));
    let plus = combine(coeff_ddx(&state.minus, a), mc, diag_plus, -ib);
    HermitePair { scale: a, center: state.center, minus, plus }
}

/// Exact expansion of the order-0 eigenstate: for B > 0 the excited pair is
/// (α·φ_{n−1}, β·φ_n) and the ground state is (0, φ_0); components swap for
/// B < 0. Everything is centered at χ(K, B) with scale a = 1/√|B|.
pub fn eigenstate0_expansion(label: LandauLabel, k: f64, b: f64, m: f64) -> Result<HermitePair> {
    let a = oscillator_length(b)?;
    let chi = guiding_center(k, b)?;
    let (alpha, beta) = spin_coefficients(label, b, m)?;
    let mut pair = HermitePair::zero(a, chi);
    match label {
        LandauLabel::Ground => {
            if b > 0.0 {
                pair.plus = vec![C64::new(1.0, 0.0)];
            } else {
                pair.minus = vec![C64::new(1.0, 0.0)];
            }
        }
        LandauLabel::Excited { n, .. } => {
            let n = n as usize;
            let mut lower = vec![C64::default(); n];
            lower[n - 1] = alpha;
            let mut upper = vec![C64::default(); n + 1];
            upper[n] = beta;
            if b > 0.0 {
                pair.minus = lower;
                pair.plus = upper;
            } else {
                // B < 0: φ_n sits on b₋ with weight β, φ_{n−1} on b₊ with α
                let mut minus = vec![C64::default(); n + 1];
                minus[n] = beta;
                let mut plus = vec![C64::default(); n];
                plus[n - 1] = alpha;
                pair.minus = minus;
                pair.plus = plus;
            }
        }
    }
    Ok(pair)
}

/// Perturbative order of a sampled eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateOrder {
    Zero,
    One { epsilon: f64 },
}

/// A Landau eigenstate sampled on an [`XGrid`], expressed in (b₋, b₊).
#[derive(Debug, Clone, PartialEq)]
pub struct LandauEigenstate {
    pub label: LandauLabel,
    pub k: f64,
    pub energy: f64,
    pub alpha: C64,
    pub beta: C64,
    pub order: StateOrder,
    pub grid: XGrid,
    pub minus: Vec<C64>,
    pub plus: Vec<C64>,
}

/// Order-0 eigenstate sampled on `grid`; errors if the grid is too narrow for
/// the state's oscillator tails.
pub fn eigenstate0(
    label: LandauLabel,
    k: f64,
    b: f64,
    m: f64,
    grid: &XGrid,
) -> Result<LandauEigenstate> {
    let pair = eigenstate0_expansion(label, k, b, m)?;
    grid.check_oscillator_tail(pair.max_index(), pair.scale, pair.center)?;
    let (minus, plus) = pair.sample_on(grid);
    let (alpha, beta) = spin_coefficients(label, b, m)?;
    Ok(LandauEigenstate {
        label,
        k,
        energy: landau_energy0(label, b, m)?,
        alpha,
        beta,
        order: StateOrder::Zero,
        grid: grid.clone(),
        minus,
        plus,
    })
}

/// Pointwise probability density |φ⁻|² + |φ⁺|².
pub fn density_profile(state: &LandauEigenstate) -> Vec<f64> {
    state
        .minus
        .iter()
        .zip(&state.plus)
        .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
        .collect()
}

/// Grid sized for a given label (and the n+2 components its first-order
/// correction drags in), centered to cover the guiding center.
pub fn state_grid(
    label: LandauLabel,
    first_order: bool,
    k: f64,
    b: f64,
    epsilon: f64,
) -> Result<XGrid> {
    let a = oscillator_length(b)?;
    let chi = guiding_center(k, b)?;
    let n_eff = label.n() as usize + if first_order { 2 } else { 0 };
    Ok(XGrid::for_oscillator(epsilon, n_eff, a, chi))
}

/// ℋ⁽⁰⁾ on raw samples; the derivative is second-order central differencing
/// with zero extension beyond the grid.
pub fn apply_h0_sampled(
    minus: &[C64],
    plus: &[C64],
    grid: &XGrid,
    k: f64,
    b: f64,
    m: f64,
) -> Result<(Vec<C64>, Vec<C64>)> {
    let chi = guiding_center(k, b)?;
    let n = grid.n_points();
    assert_eq!(minus.len(), n);
    assert_eq!(plus.len(), n);
    let d_minus = central_diff(minus, grid.epsilon());
    let d_plus = central_diff(plus, grid.epsilon());
    let i = C64::i();
    let mut out_m = Vec::with_capacity(n);
    let mut out_p = Vec::with_capacity(n);
    for (idx, x) in grid.xs().enumerate() {
        let u = x - chi;
        out_m.push(m * minus[idx] - i * (d_plus[idx] + b * u * plus[idx]));
        out_p.push(i * (-d_minus[idx] + b * u * minus[idx]) - m * plus[idx]);
    }
    Ok((out_m, out_p))
}

/// ℋ⁽¹⁾ on raw samples with central differencing.
pub fn apply_h1_sampled(
    minus: &[C64],
    plus: &[C64],
    grid: &XGrid,
    k: f64,
    b: f64,
    m: f64,
) -> Result<(Vec<C64>, Vec<C64>)> {
    let chi = guiding_center(k, b)?;
    let n = grid.n_points();
    assert_eq!(minus.len(), n);
    assert_eq!(plus.len(), n);
    let d_minus = central_diff(minus, grid.epsilon());
    let d_plus = central_diff(plus, grid.epsilon());
    let ib = C64::i() * b;
    let mut out_m = Vec::with_capacity(n);
    let mut out_p = Vec::with_capacity(n);
    for (idx, x) in grid.xs().enumerate() {
        let u = x - chi;
        out_m.push(ib * (0.5 * minus[idx] + u * d_minus[idx]) - m * d_plus[idx]);
        out_p.push(m * d_minus[idx] - ib * (0.5 * plus[idx] + u * d_plus[idx]));
    }
    Ok((out_m, out_p))
}

fn central_diff(f: &[C64], h: f64) -> Vec<C64> {
    let n = f.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let right = if i + 1 < n { f[i + 1] } else { C64::default() };
        let left = if i >= 1 { f[i - 1] } else { C64::default() };
        out.push((right - left) / (2.0 * h));
    }
    out
}

/// ⟨φ_i b_u | ℋ⁽⁰⁾ | φ_j b_v⟩ over the truncated Hermite-spinor basis
/// {φ_0..φ_{n_basis−1}} × {b₋, b₊}, assembled by lattice quadrature of the
/// exactly-applied operator. Row/column index is 2·k + (0 for b₋, 1 for b₊).
pub fn h0_hermite_matrix(n_basis: usize, b: f64, m: f64, grid: &XGrid) -> Result<DMatrix<C64>> {
    let a = oscillator_length(b)?;
    grid.check_oscillator_tail(n_basis, a, 0.0)?;
    let n_pts = grid.n_points();
    let mut basis_rows: Vec<Vec<f64>> = vec![Vec::with_capacity(n_pts); n_basis];
    let mut buf = Vec::new();
    for x in grid.xs() {
        hermite_phi_upto(n_basis.saturating_sub(1), x, a, &mut buf);
        for (row, &v) in basis_rows.iter_mut().zip(buf.iter()) {
            row.push(v);
        }
    }
    let dim = 2 * n_basis;
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    let zero_c = vec![C64::default(); n_pts];
    for j in 0..n_basis {
        for comp in 0..2 {
            let mut pair = HermitePair::zero(a, 0.0);
            let coeffs = {
                let mut c = vec![C64::default(); j + 1];
                c[j] = C64::new(1.0, 0.0);
                c
            };
            if comp == 0 {
                pair.minus = coeffs;
            } else {
                pair.plus = coeffs;
            }
            let applied = apply_h0_expansion(&pair, b, m);
            let (out_m, out_p) = applied.sample_on(grid);
            for i in 0..n_basis {
                let phi: Vec<C64> = basis_rows[i].iter().map(|&v| C64::new(v, 0.0)).collect();
                let mi = inner_product(&phi, &zero_c, &out_m, &out_p, grid.epsilon());
                let pi = inner_product(&zero_c, &phi, &out_m, &out_p, grid.epsilon());
                h[(2 * i, 2 * j + comp)] = mi;
                h[(2 * i + 1, 2 * j + comp)] = pi;
            }
        }
    }
    Ok(h)
}

/// Ascending eigenvalues of the dense Hermite-spinor ℋ⁽⁰⁾; the independent
/// cross-check for [`landau_energy0`].
pub fn h0_spectrum_dense(n_basis: usize, b: f64, m: f64, grid: &XGrid) -> Result<Vec<f64>> {
    let h = h0_hermite_matrix(n_basis, b, m, grid)?;
    let mut eigs: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eigs)
}
