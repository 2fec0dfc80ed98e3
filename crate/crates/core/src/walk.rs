//! Real-space evolution of the two-component walk on a periodic 2D lattice,
//! plus density diagnostics and initial-state construction.
//!
//! One time step transports the spinor with coin U along the p-direction and
//! then with coin V along the q-direction; the half-integer-time intermediate
//! is internal bookkeeping and never appears in any output.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{angle_alpha, angle_theta, PhysicalParams, Sign};

/// Two-component amplitude at one site.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub l: C64,
    pub r: C64,
}

/// Spinor field on a periodic rectangular lattice.
///
/// Sites carry signed indices p ∈ [p_min, p_max], q ∈ [q_min, q_max] with
/// coordinates X_p = p·ε, Y_q = q·ε. Centered (odd-sized) grids are the
/// default for every reproduction run.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorLattice {
    n_p: usize,
    n_q: usize,
    params: PhysicalParams,
    // row-major storage: index = (q - q_min) * n_p + (p - p_min)
    l: Vec<C64>,
    r: Vec<C64>,
}

impl SpinorLattice {
    /// Zero-filled lattice spanning p ∈ [−half_p, half_p], q ∈ [−half_q, half_q].
    pub fn centered(half_p: usize, half_q: usize, params: PhysicalParams) -> Self {
        assert!(half_p >= 1 && half_q >= 1);
        Self::with_dims(2 * half_p + 1, 2 * half_q + 1, params)
    }

    /// Zero-filled lattice with explicit site counts; for even `n_p` the index
    /// range is p ∈ [−n_p/2, n_p/2 − 1].
    pub fn with_dims(n_p: usize, n_q: usize, params: PhysicalParams) -> Self {
        assert!(n_p >= 1 && n_q >= 1);
        Self {
            n_p,
            n_q,
            params,
            l: vec![C64::default(); n_p * n_q],
            r: vec![C64::default(); n_p * n_q],
        }
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn p_min(&self) -> i64 {
        -((self.n_p / 2) as i64)
    }

    pub fn p_max(&self) -> i64 {
        self.p_min() + self.n_p as i64 - 1
    }

    pub fn q_min(&self) -> i64 {
        -((self.n_q / 2) as i64)
    }

    pub fn q_max(&self) -> i64 {
        self.q_min() + self.n_q as i64 - 1
    }

    fn index(&self, p: i64, q: i64) -> usize {
        debug_assert!(p >= self.p_min() && p <= self.p_max());
        debug_assert!(q >= self.q_min() && q <= self.q_max());
        (q - self.q_min()) as usize * self.n_p + (p - self.p_min()) as usize
    }

    pub fn get(&self, p: i64, q: i64) -> Spinor {
        let i = self.index(p, q);
        Spinor { l: self.l[i], r: self.r[i] }
    }

    pub fn set(&mut self, p: i64, q: i64, value: Spinor) {
        let i = self.index(p, q);
        self.l[i] = value.l;
        self.r[i] = value.r;
    }

    pub fn components(&self) -> (&[C64], &[C64]) {
        (&self.l, &self.r)
    }

    /// Σ (|ψ^L|² + |ψ^R|²) in fixed row-major order with compensated
    /// summation, so the result is bit-reproducible.
    pub fn total_probability(&self) -> f64 {
        let mut acc = KahanSum::default();
        for (l, r) in self.l.iter().zip(&self.r) {
            acc.add(l.norm_sqr() + r.norm_sqr());
        }
        acc.value()
    }

    /// Smallest distance (in sites) from the origin to any boundary; an
    /// origin-localized state cannot wrap before this many steps.
    pub fn light_cone_clearance(&self) -> i64 {
        self.p_max()
            .min(-self.p_min())
            .min(self.q_max())
            .min(-self.q_min())
    }

    fn clone_zeroed(&self) -> Self {
        Self {
            n_p: self.n_p,
            n_q: self.n_q,
            params: self.params,
            l: vec![C64::default(); self.l.len()],
            r: vec![C64::default(); self.r.len()],
        }
    }
}

/// Fixed-order compensated (Kahan) accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Initial-state width; `width == 0` selects the delta state at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    width: f64,
}

impl GaussianSpec {
    pub fn new(width: f64) -> Result<Self> {
        if !width.is_finite() || width < 0.0 {
            return Err(Error::InvalidParameter("width must be finite and >= 0"));
        }
        Ok(Self { width })
    }

    pub fn width(&self) -> f64 {
        self.width
    }
}

/// ψ^L = √(G_w), ψ^R = 0, with G_w the Gaussian density
/// exp(−(p²+q²)/(2w²))/(2πw²) normalized to 1 on the finite grid.
pub fn gaussian_state(
    spec: GaussianSpec,
    half_p: usize,
    half_q: usize,
    params: PhysicalParams,
) -> SpinorLattice {
    let mut state = SpinorLattice::centered(half_p, half_q, params);
    if spec.width() == 0.0 {
        state.set(0, 0, Spinor { l: C64::new(1.0, 0.0), r: C64::default() });
        return state;
    }
    let w2 = spec.width() * spec.width();
    let prefactor = 1.0 / (2.0 * std::f64::consts::PI * w2);
    let mut weights = vec![0.0; state.n_p * state.n_q];
    let mut total = KahanSum::default();
    let mut i = 0;
    for q in state.q_min()..=state.q_max() {
        for p in state.p_min()..=state.p_max() {
            let g = prefactor * (-((p * p + q * q) as f64) / (2.0 * w2)).exp();
            weights[i] = g;
            total.add(g);
            i += 1;
        }
    }
    let norm = total.value();
    for (site, g) in state.l.iter_mut().zip(&weights) {
        *site = C64::new((g / norm).sqrt(), 0.0);
    }
    state
}

/// How one time step is carried out; both modes agree to roundoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepMode {
    /// Single pass relating Ψ_{j+1} directly to Ψ_j.
    Composed,
    /// U-transport along p, then V-transport along q, discarding the
    /// half-time intermediate.
    TwoHalfSteps,
}

struct ComposedCoeffs {
    // output L row: coefficients of L(p+1,q+1), R(p−1,q+1), L(p+1,q−1), R(p−1,q−1)
    l: Vec<[C64; 4]>,
    // output R row: same input ordering
    r: Vec<[C64; 4]>,
}

fn composed_coeffs(state: &SpinorLattice) -> ComposedCoeffs {
    let params = &state.params;
    let tp = angle_theta(Sign::Plus, params);
    let tm = angle_theta(Sign::Minus, params);
    let (cp, sp) = (tp.cos(), tp.sin());
    let (cm, sm) = (tm.cos(), tm.sin());
    let i = C64::i();
    let mut l = Vec::with_capacity(state.n_p);
    let mut r = Vec::with_capacity(state.n_p);
    for p in state.p_min()..=state.p_max() {
        let e2 = C64::from_polar(1.0, 2.0 * angle_alpha(p, params));
        let e2c = e2.conj();
        l.push([e2 * (cm * cp), e2 * (i * cm * sp), -e2c * (sm * sp), e2c * (i * sm * cp)]);
        r.push([e2 * (i * sm * cp), -e2 * (sm * sp), e2c * (i * cm * sp), e2c * (cm * cp)]);
    }
    ComposedCoeffs { l, r }
}

fn step_composed_into(state: &SpinorLattice, coeffs: &ComposedCoeffs, out: &mut SpinorLattice) {
    let n_p = state.n_p;
    let n_q = state.n_q;
    let (l_in, r_in) = (&state.l, &state.r);
    out.l
        .par_chunks_mut(n_p)
        .zip(out.r.par_chunks_mut(n_p))
        .enumerate()
        .for_each(|(row, (out_l, out_r))| {
            let up = (row + 1) % n_q; // q + 1
            let dn = (row + n_q - 1) % n_q; // q − 1
            let l_up = &l_in[up * n_p..(up + 1) * n_p];
            let r_up = &r_in[up * n_p..(up + 1) * n_p];
            let l_dn = &l_in[dn * n_p..(dn + 1) * n_p];
            let r_dn = &r_in[dn * n_p..(dn + 1) * n_p];
            for col in 0..n_p {
                let e = (col + 1) % n_p; // p + 1
                let w = (col + n_p - 1) % n_p; // p − 1
                let cl = &coeffs.l[col];
                let cr = &coeffs.r[col];
                out_l[col] =
                    cl[0] * l_up[e] + cl[1] * r_up[w] + cl[2] * l_dn[e] + cl[3] * r_dn[w];
                out_r[col] =
                    cr[0] * l_up[e] + cr[1] * r_up[w] + cr[2] * l_dn[e] + cr[3] * r_dn[w];
            }
        });
}

fn step_two_half_into(
    state: &SpinorLattice,
    half: &mut SpinorLattice,
    out: &mut SpinorLattice,
) {
    let params = &state.params;
    let n_p = state.n_p;
    let n_q = state.n_q;
    let tp = angle_theta(Sign::Plus, params);
    let tm = angle_theta(Sign::Minus, params);
    let (cp, sp) = (tp.cos(), tp.sin());
    let (cm, sm) = (tm.cos(), tm.sin());
    let i = C64::i();
    let mut u_rows = Vec::with_capacity(n_p);
    let mut v_rows = Vec::with_capacity(n_p);
    for p in state.p_min()..=state.p_max() {
        let ep = C64::from_polar(1.0, angle_alpha(p, params));
        let em = ep.conj();
        u_rows.push([ep * cp, ep * (i * sp), em * (i * sp), em * cp]);
        v_rows.push([ep * cm, em * (i * sm), ep * (i * sm), em * cm]);
    }
    // U-transport along p: Ψ_{j+1/2}(p,q) = U(α_p, θ⁺)·(L(p+1,q), R(p−1,q))
    let (l_in, r_in) = (&state.l, &state.r);
    half.l
        .par_chunks_mut(n_p)
        .zip(half.r.par_chunks_mut(n_p))
        .enumerate()
        .for_each(|(row, (h_l, h_r))| {
            let l_row = &l_in[row * n_p..(row + 1) * n_p];
            let r_row = &r_in[row * n_p..(row + 1) * n_p];
            for col in 0..n_p {
                let e = (col + 1) % n_p;
                let w = (col + n_p - 1) % n_p;
                let u = &u_rows[col];
                h_l[col] = u[0] * l_row[e] + u[1] * r_row[w];
                h_r[col] = u[2] * l_row[e] + u[3] * r_row[w];
            }
        });
    // V-transport along q: Ψ_{j+1}(p,q) = V(α_p, θ⁻)·(L(p,q+1), R(p,q−1))
    let (l_half, r_half) = (&half.l, &half.r);
    out.l
        .par_chunks_mut(n_p)
        .zip(out.r.par_chunks_mut(n_p))
        .enumerate()
        .for_each(|(row, (out_l, out_r))| {
            let up = (row + 1) % n_q;
            let dn = (row + n_q - 1) % n_q;
            let l_up = &l_half[up * n_p..(up + 1) * n_p];
            let r_dn = &r_half[dn * n_p..(dn + 1) * n_p];
            for col in 0..n_p {
                let v = &v_rows[col];
                out_l[col] = v[0] * l_up[col] + v[1] * r_dn[col];
                out_r[col] = v[2] * l_up[col] + v[3] * r_dn[col];
            }
        });
}

/// One full time step T_j → T_j + ε with periodic boundaries.
pub fn step(state: &SpinorLattice, mode: StepMode) -> SpinorLattice {
    let mut out = state.clone_zeroed();
    match mode {
        StepMode::Composed => {
            let coeffs = composed_coeffs(state);
            step_composed_into(state, &coeffs, &mut out);
        }
        StepMode::TwoHalfSteps => {
            let mut half = state.clone_zeroed();
            step_two_half_into(state, &mut half, &mut out);
        }
    }
    out
}

/// Repeated stepping with a per-step observer; `observe(j, state)` is called
/// at j = 0 with the input and after every step.
///
/// Errors unless the light cone provably cannot wrap (`n_steps` strictly less
/// than the boundary clearance) or the caller waives the check.
pub fn evolve_observed<F>(
    state: &SpinorLattice,
    n_steps: usize,
    mode: StepMode,
    waive_light_cone: bool,
    mut observe: F,
) -> Result<SpinorLattice>
where
    F: FnMut(usize, &SpinorLattice),
{
    if !waive_light_cone {
        let clearance = state.light_cone_clearance();
        if n_steps as i64 >= clearance {
            return Err(Error::LightConeWrap { steps: n_steps, clearance });
        }
    }
    observe(0, state);
    let mut cur = state.clone();
    let mut next = state.clone_zeroed();
    let coeffs = match mode {
        StepMode::Composed => Some(composed_coeffs(state)),
        StepMode::TwoHalfSteps => None,
    };
    let mut half = match mode {
        StepMode::TwoHalfSteps => Some(state.clone_zeroed()),
        StepMode::Composed => None,
    };
    for j in 1..=n_steps {
        match mode {
            StepMode::Composed => {
                step_composed_into(&cur, coeffs.as_ref().unwrap(), &mut next)
            }
            StepMode::TwoHalfSteps => {
                step_two_half_into(&cur, half.as_mut().unwrap(), &mut next)
            }
        }
        std::mem::swap(&mut cur, &mut next);
        observe(j, &cur);
    }
    Ok(cur)
}

/// Evolve and return the snapshots requested in `snapshot_times` (each ≤
/// `n_steps`), in the order given. Time 0 denotes the input state.
pub fn evolve(
    state: &SpinorLattice,
    n_steps: usize,
    snapshot_times: &[usize],
    mode: StepMode,
    waive_light_cone: bool,
) -> Result<Vec<SpinorLattice>> {
    if snapshot_times.iter().any(|&t| t > n_steps) {
        return Err(Error::InvalidParameter("snapshot time exceeds n_steps"));
    }
    let mut store: Vec<(usize, SpinorLattice)> = Vec::new();
    evolve_observed(state, n_steps, mode, waive_light_cone, |j, s| {
        if snapshot_times.contains(&j) && !store.iter().any(|(t, _)| *t == j) {
            store.push((j, s.clone()));
        }
    })?;
    Ok(snapshot_times
        .iter()
        .map(|t| {
            store
                .iter()
                .find(|(j, _)| j == t)
                .map(|(_, s)| s.clone())
                .expect("snapshot recorded")
        })
        .collect())
}

/// Probability density P(p, q) = |ψ^L|² + |ψ^R|² on the lattice.
#[derive(Debug, Clone)]
pub struct DensityField {
    pub n_p: usize,
    pub n_q: usize,
    pub p_min: i64,
    pub q_min: i64,
    /// Row-major, same layout as the lattice.
    pub values: Vec<f64>,
}

impl DensityField {
    pub fn get(&self, p: i64, q: i64) -> f64 {
        let col = (p - self.p_min) as usize;
        let row = (q - self.q_min) as usize;
        self.values[row * self.n_p + col]
    }

    pub fn p_max(&self) -> i64 {
        self.p_min + self.n_p as i64 - 1
    }

    pub fn q_max(&self) -> i64 {
        self.q_min + self.n_q as i64 - 1
    }
}

pub fn density(state: &SpinorLattice) -> DensityField {
    let values = state
        .l
        .iter()
        .zip(&state.r)
        .map(|(l, r)| l.norm_sqr() + r.norm_sqr())
        .collect();
    DensityField {
        n_p: state.n_p,
        n_q: state.n_q,
        p_min: state.p_min(),
        q_min: state.q_min(),
        values,
    }
}

/// Density plus the raw second-moment spreads σ_p = √(Σ p²·P) and
/// σ_q = √(Σ q²·P); no mean subtraction, row-major compensated accumulation.
pub fn density_and_spread(state: &SpinorLattice) -> (DensityField, f64, f64) {
    let field = density(state);
    let mut sp = KahanSum::default();
    let mut sq = KahanSum::default();
    let mut i = 0;
    for q in field.q_min..=field.q_max() {
        for p in field.p_min..=field.p_max() {
            let d = field.values[i];
            sp.add((p * p) as f64 * d);
            sq.add((q * q) as f64 * d);
            i += 1;
        }
    }
    let sigma_p = sp.value().sqrt();
    let sigma_q = sq.value().sqrt();
    (field, sigma_p, sigma_q)
}

/// Axis-direction ballistic-front maxima of a density at step `j`: for each of
/// the four directions, the largest density on the corresponding half-axis at
/// distance in [⌈j/2⌉, j] from the origin. The front caustic sits near 0.53·j,
/// safely inside the window, while the central region stays below it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontMaxima {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

pub fn front_maxima(field: &DensityField, j: usize) -> Option<FrontMaxima> {
    if j < 2 {
        return None;
    }
    let lo = j.div_ceil(2) as i64;
    let hi = j as i64;
    if field.p_min > -lo
        || field.p_max() < lo
        || field.q_min > -lo
        || field.q_max() < lo
        || field.p_min > 0
        || field.q_min > 0
    {
        return None;
    }
    let hi_p = hi.min(field.p_max());
    let lo_p = (-hi).max(field.p_min);
    let hi_q = hi.min(field.q_max());
    let lo_q = (-hi).max(field.q_min);
    let mut m = FrontMaxima { left: 0.0, right: 0.0, top: 0.0, bottom: 0.0 };
    for p in lo..=hi_p {
        m.right = m.right.max(field.get(p, 0));
    }
    for p in lo_p..=-lo {
        m.left = m.left.max(field.get(p, 0));
    }
    for q in lo..=hi_q {
        m.top = m.top.max(field.get(0, q));
    }
    for q in lo_q..=-lo {
        m.bottom = m.bottom.max(field.get(0, q));
    }
    Some(m)
}

/// Relative spread (std/mean) over angle of the front radius at step `j`:
/// along each of `n_angles` rays the radius maximizing the density within
/// [r_lo, r_hi] is found, sampling each point as the max over its four
/// surrounding lattice sites so the even/odd sublattice zeros drop out.
/// Smaller values mean a more circular front.
pub fn front_radius_relative_spread(
    field: &DensityField,
    n_angles: usize,
    r_lo: f64,
    r_hi: f64,
) -> f64 {
    assert!(n_angles >= 4 && r_lo > 0.0 && r_hi > r_lo);
    let sample = |x: f64, y: f64| -> f64 {
        let mut best: f64 = 0.0;
        for px in [x.floor() as i64, x.ceil() as i64] {
            for qy in [y.floor() as i64, y.ceil() as i64] {
                if px >= field.p_min
                    && px <= field.p_max()
                    && qy >= field.q_min
                    && qy <= field.q_max()
                {
                    best = best.max(field.get(px, qy));
                }
            }
        }
        best
    };
    let mut radii = Vec::with_capacity(n_angles);
    for k in 0..n_angles {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n_angles as f64;
        let (ct, st) = (theta.cos(), theta.sin());
        let mut best_r = r_lo;
        let mut best_v = -1.0;
        let mut r = r_lo;
        while r <= r_hi {
            let v = sample(r * ct, r * st);
            if v > best_v {
                best_v = v;
                best_r = r;
            }
            r += 1.0;
        }
        radii.push(best_r);
    }
    let mean = radii.iter().sum::<f64>() / n_angles as f64;
    let var = radii.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / n_angles as f64;
    var.sqrt() / mean
}
