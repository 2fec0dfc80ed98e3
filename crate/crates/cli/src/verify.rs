//! Small-scale invariant suite behind `dtqw verify`: one named check per
//! invariant of the walk, spectral, propagator and report layers, each
//! printing a pass/fail line. Exit status 0 only if everything passes.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dtqw::landau::{
    self, density_profile, eigenstate0, eigenstate0_expansion, h0_spectrum_dense,
    landau_energy0, oscillator_length, spin_coefficients, state_grid, LandauLabel,
};
use dtqw::norms::inner_product;
use dtqw::perturb::{
    first_order_state, matrix_element_h1, matrix_element_h1_quadrature, CorrectionOrder,
};
use dtqw::propagator::{
    apply_q, build_q, delta_metric, delta_metric_for_state, dft_y, idft_y,
    numerical_hamiltonian, unitary_eigendecomposition, Boundary, MixedState, SpinBasis,
};
use dtqw::walk::{
    density_and_spread, evolve_observed, gaussian_state, step, GaussianSpec, Spinor,
    SpinorLattice, StepMode,
};
use dtqw::xgrid::XGrid;
use dtqw::{coin_matrices, PhysicalParams, Sign};

use crate::report::{Report, Value};

type CheckResult = Result<(), String>;

pub struct Check {
    pub name: &'static str,
    pub run: fn() -> CheckResult,
}

fn fail(msg: String) -> CheckResult {
    Err(msg)
}

fn all_labels(n_max: u32) -> Vec<LandauLabel> {
    let mut v = vec![LandauLabel::Ground];
    for n in 1..=n_max {
        v.push(LandauLabel::excited(Sign::Plus, n).unwrap());
        v.push(LandauLabel::excited(Sign::Minus, n).unwrap());
    }
    v
}

fn random_lattice(half: usize, params: PhysicalParams, seed: u64) -> SpinorLattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SpinorLattice::centered(half, half, params);
    for q in s.q_min()..=s.q_max() {
        for p in s.p_min()..=s.p_max() {
            s.set(
                p,
                q,
                Spinor {
                    l: C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    r: C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                },
            );
        }
    }
    s
}

fn max_component_diff(a: &SpinorLattice, b: &SpinorLattice) -> f64 {
    let (al, ar) = a.components();
    let (bl, br) = b.components();
    al.iter()
        .zip(bl)
        .chain(ar.iter().zip(br))
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max)
}

// ---- walk layer ----

fn coin_unitarity() -> CheckResult {
    let id = nalgebra::Matrix2::<C64>::identity();
    for i in -8..=8 {
        for j in -8..=8 {
            let alpha = i as f64 * 0.41;
            let theta = j as f64 * 0.37;
            let (u, v) = coin_matrices(alpha, theta);
            for m in [u, v] {
                let defect = (m.adjoint() * m - id).map(|z| z.norm()).max();
                if defect >= 1e-14 {
                    return fail(format!("coin unitarity defect {defect:.2e} at α={alpha} θ={theta}"));
                }
            }
        }
    }
    Ok(())
}

fn walk_norm_conservation() -> CheckResult {
    let params = PhysicalParams::new(1.0, 0.3, 1.0).unwrap();
    let mut state = random_lattice(10, params, 1);
    for _ in 0..40 {
        let before = state.total_probability();
        state = step(&state, StepMode::Composed);
        let drift = (state.total_probability() - before).abs();
        if drift >= 1e-12 {
            return fail(format!("per-step probability drift {drift:.2e}"));
        }
    }
    Ok(())
}

fn walk_mode_equivalence() -> CheckResult {
    let params = PhysicalParams::new(0.7, -0.8, 1.2).unwrap();
    let state = random_lattice(9, params, 2);
    let diff = max_component_diff(
        &step(&state, StepMode::Composed),
        &step(&state, StepMode::TwoHalfSteps),
    );
    if diff >= 1e-12 {
        return fail(format!("composed vs two-half-step mismatch {diff:.2e}"));
    }
    Ok(())
}

fn walk_sublattice_parity() -> CheckResult {
    let params = PhysicalParams::new(1.0, 0.1, 1.0).unwrap();
    let mut state = gaussian_state(GaussianSpec::new(0.0).unwrap(), 10, 10, params);
    for j in 1..=8i64 {
        state = step(&state, StepMode::Composed);
        for q in state.q_min()..=state.q_max() {
            for p in state.p_min()..=state.p_max() {
                if (p + j).rem_euclid(2) == 1 || (q + j).rem_euclid(2) == 1 {
                    let s = state.get(p, q);
                    let d = s.l.norm_sqr() + s.r.norm_sqr();
                    if d != 0.0 {
                        return fail(format!("density {d:.2e} on odd sublattice at ({p},{q}) j={j}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn walk_determinism() -> CheckResult {
    let params = PhysicalParams::new(1.0, 0.05, 1.0).unwrap();
    let init = gaussian_state(GaussianSpec::new(1.5).unwrap(), 16, 16, params);
    let a = evolve_observed(&init, 12, StepMode::Composed, false, |_, _| {}).unwrap();
    let b = evolve_observed(&init, 12, StepMode::Composed, false, |_, _| {}).unwrap();
    if a != b {
        return fail("identical evolve runs differ bitwise".into());
    }
    let (_, sp, sq) = density_and_spread(&a);
    let (_, sp2, sq2) = density_and_spread(&b);
    if sp != sp2 || sq != sq2 {
        return fail("spread reductions are not reproducible".into());
    }
    Ok(())
}

// ---- spectral layer ----

fn hermite_orthonormality() -> CheckResult {
    let grid = XGrid::for_oscillator(0.05, 21, 1.0, 0.0);
    let mut sampled: Vec<Vec<f64>> = vec![Vec::new(); 21];
    let mut buf = Vec::new();
    for x in grid.xs() {
        dtqw::hermite::hermite_phi_upto(20, x, 1.0, &mut buf);
        for (row, &v) in sampled.iter_mut().zip(&buf) {
            row.push(v);
        }
    }
    for m in 0..=20usize {
        for n in m..=20 {
            let s: f64 =
                sampled[m].iter().zip(&sampled[n]).map(|(a, b)| a * b).sum::<f64>()
                    * grid.epsilon();
            let want = if m == n { 1.0 } else { 0.0 };
            if (s - want).abs() >= 1e-8 {
                return fail(format!("⟨φ_{m}|φ_{n}⟩ = {s}"));
            }
        }
    }
    Ok(())
}

fn spin_normalization() -> CheckResult {
    for &b in &[1.0, -1.0, 0.5, -0.5, 2.0] {
        for &m in &[0.0, 1.0] {
            for label in all_labels(10) {
                let (al, be) = spin_coefficients(label, b, m).map_err(|e| e.to_string())?;
                let defect = (al.norm_sqr() + be.norm_sqr() - 1.0).abs();
                if defect >= 1e-14 {
                    return fail(format!("|α|²+|β|² off by {defect:.2e} for {label}"));
                }
            }
        }
    }
    Ok(())
}

fn eigenstate_orthonormality() -> CheckResult {
    let (b, m, k) = (1.0, 1.0, 0.9);
    let labels = all_labels(10);
    let grid = state_grid(*labels.last().unwrap(), false, k, b, 0.05).unwrap();
    let sampled: Vec<_> = labels
        .iter()
        .map(|&l| eigenstate0_expansion(l, k, b, m).unwrap().sample_on(&grid))
        .collect();
    for (i, (am, ap)) in sampled.iter().enumerate() {
        for (j, (bm, bp)) in sampled.iter().enumerate() {
            let g = inner_product(am, ap, bm, bp, grid.epsilon());
            let want = if i == j { C64::new(1.0, 0.0) } else { C64::default() };
            if (g - want).norm() >= 1e-8 {
                return fail(format!("⟨{}|{}⟩ = {g}", labels[i], labels[j]));
            }
        }
    }
    Ok(())
}

fn eigenstate_residual() -> CheckResult {
    for &(b, m) in &[(1.0, 1.0), (-0.5, 0.0)] {
        for label in all_labels(10) {
            let grid = state_grid(label, false, 0.3, b, 0.05).unwrap();
            let pair = eigenstate0_expansion(label, 0.3, b, m).unwrap();
            let e = landau_energy0(label, b, m).unwrap();
            let applied = landau::apply_h0_expansion(&pair, b, m);
            let (am, ap) = applied.sample_on(&grid);
            let (sm, sp) = pair.sample_on(&grid);
            let num: f64 = am
                .iter()
                .zip(&sm)
                .chain(ap.iter().zip(&sp))
                .map(|(h, s)| (h - e * s).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if num >= 1e-8 {
                return fail(format!("eigen-residual {num:.2e} for {label} B={b} m={m}"));
            }
        }
    }
    Ok(())
}

fn h1_diagonal_vanishes() -> CheckResult {
    for &b in &[1.0, -1.0, 0.5, -0.5] {
        for &m in &[0.0, 1.0] {
            for label in all_labels(10) {
                let v = matrix_element_h1(label, label, b, m).map_err(|e| e.to_string())?;
                if v.norm() >= 1e-10 {
                    return fail(format!("⟨{label}|ℋ¹|{label}⟩ = {v}"));
                }
            }
        }
    }
    Ok(())
}

fn h1_selection_rule() -> CheckResult {
    let grid = XGrid::for_oscillator(0.05, 9, 1.0, 0.0);
    for lp in all_labels(7) {
        for l in all_labels(7) {
            let dn = lp.n().abs_diff(l.n());
            if dn != 0 && dn != 2 {
                let closed = matrix_element_h1(lp, l, 1.0, 1.0).map_err(|e| e.to_string())?;
                if closed != C64::default() {
                    return fail(format!("closed form outside selection rule: {lp},{l}"));
                }
                let quad = matrix_element_h1_quadrature(lp, l, 1.0, 1.0, &grid)
                    .map_err(|e| e.to_string())?;
                if quad.norm() >= 1e-10 {
                    return fail(format!("quadrature {quad:.2e} outside selection rule: {lp},{l}"));
                }
            }
        }
    }
    Ok(())
}

fn h1_closed_vs_quadrature() -> CheckResult {
    for &b in &[1.0, -1.0] {
        let a = oscillator_length(b).unwrap();
        let grid = XGrid::for_oscillator(0.05 * a, 8, a, 0.0);
        for lp in all_labels(6) {
            for l in all_labels(6) {
                let closed = matrix_element_h1(lp, l, b, 1.0).map_err(|e| e.to_string())?;
                let quad = matrix_element_h1_quadrature(lp, l, b, 1.0, &grid)
                    .map_err(|e| e.to_string())?;
                if (closed - quad).norm() >= 1e-8 {
                    return fail(format!("{lp},{l} B={b}: closed {closed} vs quadrature {quad}"));
                }
            }
        }
    }
    Ok(())
}

fn dense_eigensolver_crosscheck() -> CheckResult {
    for &b in &[0.5, 1.0, 2.0] {
        for &m in &[0.0, 1.0] {
            let a = oscillator_length(b).unwrap();
            let n_basis = 18;
            let grid = XGrid::for_oscillator(0.05 * a, n_basis, a, 0.0);
            let eigs = h0_spectrum_dense(n_basis, b, m, &grid).map_err(|e| e.to_string())?;
            for label in all_labels(10) {
                let want = landau_energy0(label, b, m).unwrap();
                let best =
                    eigs.iter().map(|&e| (e - want).abs()).fold(f64::INFINITY, f64::min);
                if best >= 1e-6 * want.abs().max(1.0) {
                    return fail(format!("dense spectrum misses {label} (B={b}, m={m}) by {best:.2e}"));
                }
            }
        }
    }
    Ok(())
}

fn delta1_orthogonality() -> CheckResult {
    let (b, m, k, eps) = (1.0, 1.0, 0.2, 0.1);
    for label in all_labels(6) {
        let grid = state_grid(label, true, k, b, eps).unwrap();
        let base = eigenstate0(label, k, b, m, &grid).map_err(|e| e.to_string())?;
        let first =
            first_order_state(label, k, b, m, eps, &grid).map_err(|e| e.to_string())?;
        let dm: Vec<C64> =
            first.minus.iter().zip(&base.minus).map(|(x, y)| (x - y) / eps).collect();
        let dp: Vec<C64> =
            first.plus.iter().zip(&base.plus).map(|(x, y)| (x - y) / eps).collect();
        let overlap = inner_product(&base.minus, &base.plus, &dm, &dp, grid.epsilon());
        if overlap.norm() >= 1e-10 {
            return fail(format!("⟨Φ⁰|Δ¹⟩ = {overlap:.2e} for {label}"));
        }
        if first.energy != base.energy {
            return fail(format!("first-order energy shifted for {label}"));
        }
    }
    Ok(())
}

fn first_order_density_signs() -> CheckResult {
    let (b, m, eps) = (1.0, 1.0, 0.25);
    for n in 0..=4u32 {
        let label = if n == 0 {
            LandauLabel::Ground
        } else {
            LandauLabel::excited(Sign::Plus, n).unwrap()
        };
        let grid = state_grid(label, true, 0.0, b, 0.02).unwrap();
        let base = eigenstate0(label, 0.0, b, m, &grid).map_err(|e| e.to_string())?;
        let first = first_order_state(label, 0.0, b, m, eps, &grid).map_err(|e| e.to_string())?;
        let p0 = density_profile(&base);
        let p1 = density_profile(&first);
        let norm1: f64 = p1.iter().sum::<f64>() * grid.epsilon();
        let mid = grid.n_points() / 2;
        let diff = p1[mid] / norm1 - p0[mid];
        let expect_positive = n >= 2 && n % 2 == 0;
        if (diff > 0.0) != expect_positive {
            return fail(format!("central density change {diff:.3e} has wrong sign for n={n}"));
        }
    }
    Ok(())
}

// ---- propagator layer ----

fn q_unitarity() -> CheckResult {
    for &(eps, b, m, k) in &[(0.1, 1.0, 1.0, 0.0), (0.3, -0.7, 0.5, 1.1), (0.5, 2.0, 0.0, -0.4)] {
        let params = PhysicalParams::new(eps, b, m).unwrap();
        let grid = XGrid::centered(eps, 18);
        let q = build_q(&params, k, &grid, Boundary::Periodic).matrix;
        let n = q.nrows();
        let defect = (q.adjoint() * &q - DMatrix::<C64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        if defect >= 1e-12 {
            return fail(format!("‖Q†Q−I‖ = {defect:.2e} at ε={eps} B={b}"));
        }
    }
    Ok(())
}

fn shift_exactness() -> CheckResult {
    // with W = I the step is the pure counter-shift; two opposite shifts
    // must reproduce the input exactly
    let params = PhysicalParams::new(0.5, 0.0, 0.0).unwrap();
    let grid = XGrid::centered(0.5, 9);
    let n = grid.n_points();
    let c0: Vec<C64> = (0..n).map(|i| C64::new(i as f64, -0.5 * i as f64)).collect();
    let c1: Vec<C64> = (0..n).map(|i| C64::new(1.0 - i as f64, 0.25)).collect();
    let state = MixedState::new(0.0, grid, SpinBasis::LR, c0.clone(), c1.clone());
    let once = apply_q(&params, Boundary::Periodic, &state);
    let mut swapped = once.clone();
    std::mem::swap(&mut swapped.c0, &mut swapped.c1);
    let back_swapped = apply_q(&params, Boundary::Periodic, &swapped);
    // swapping components turns the counter-shift into its inverse
    for i in 0..n {
        if (back_swapped.c1[i] - c0[i]).norm() != 0.0 || (back_swapped.c0[i] - c1[i]).norm() != 0.0
        {
            return fail("opposite shifts did not restore the input".into());
        }
    }
    Ok(())
}

fn dft_roundtrip_parseval() -> CheckResult {
    let params = PhysicalParams::new(0.5, 0.8, 1.0).unwrap();
    let state = random_lattice(8, params, 3);
    let mixed = dft_y(&state);
    let back = idft_y(&mixed, &params).map_err(|e| e.to_string())?;
    let diff = max_component_diff(&state, &back);
    if diff >= 1e-12 {
        return fail(format!("DFT roundtrip defect {diff:.2e}"));
    }
    let direct = state.total_probability();
    let fourier: f64 = mixed
        .iter()
        .flat_map(|ms| ms.c0.iter().chain(&ms.c1))
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        / mixed.len() as f64;
    if (direct - fourier).abs() >= 1e-12 {
        return fail(format!("Parseval defect {:.2e}", (direct - fourier).abs()));
    }
    Ok(())
}

fn fourier_step_commutation() -> CheckResult {
    let params = PhysicalParams::new(0.4, 0.9, 1.0).unwrap();
    let state = random_lattice(8, params, 4);
    let after = dft_y(&step(&state, StepMode::Composed));
    let through: Vec<_> = dft_y(&state)
        .iter()
        .map(|ms| apply_q(&params, Boundary::Periodic, ms))
        .collect();
    for (a, b) in after.iter().zip(&through) {
        let diff = a
            .c0
            .iter()
            .zip(&b.c0)
            .chain(a.c1.iter().zip(&b.c1))
            .map(|(x, y)| (x - y).norm())
            .fold(0.0f64, f64::max);
        if diff >= 1e-10 {
            return fail(format!("step/Q commutation defect {diff:.2e} at K={}", a.k));
        }
    }
    Ok(())
}

fn hnum_hermiticity() -> CheckResult {
    let params = PhysicalParams::new(0.2, 1.0, 1.0).unwrap();
    let grid = XGrid::centered(0.2, 30);
    let q = build_q(&params, 0.2, &grid, Boundary::Periodic);
    let h = numerical_hamiltonian(&q).map_err(|e| e.to_string())?;
    let defect = (&h - h.adjoint()).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if defect >= 1e-10 {
        return fail(format!("H_num hermiticity defect {defect:.2e}"));
    }
    // quasi-energies from the principal branch stay within (−π/ε, π/ε]
    let eigs = h.symmetric_eigen().eigenvalues;
    let bound = std::f64::consts::PI / params.epsilon();
    if eigs.iter().any(|e| e.abs() > bound) {
        return fail("H_num eigenvalue escaped the principal quasi-energy window".into());
    }
    Ok(())
}

fn eigenphase_consistency() -> CheckResult {
    let params = PhysicalParams::new(0.25, -0.8, 0.7).unwrap();
    let grid = XGrid::centered(0.25, 24);
    let q = build_q(&params, -0.3, &grid, Boundary::Periodic).matrix;
    let (phases, vectors) = unitary_eigendecomposition(&q).map_err(|e| e.to_string())?;
    for (col, &phi) in phases.iter().enumerate() {
        let v: DVector<C64> = vectors.column(col).into_owned();
        let qv = &q * &v;
        let mu = C64::from_polar(1.0, phi);
        let res = (qv - v.map(|z| mu * z)).norm();
        if res >= 1e-12 {
            return fail(format!("μ = exp(iφ) eigenpair residual {res:.2e}"));
        }
    }
    Ok(())
}

fn delta_positivity_and_phase_invariance() -> CheckResult {
    let params = PhysicalParams::new(0.1, 1.0, 1.0).unwrap();
    let label = LandauLabel::excited(Sign::Plus, 1).unwrap();
    let grid = state_grid(label, false, 0.0, 1.0, 0.1).unwrap();
    let state = eigenstate0(label, 0.0, 1.0, 1.0, &grid).map_err(|e| e.to_string())?;
    let d = delta_metric_for_state(&state, &params).map_err(|e| e.to_string())?;
    if !(d > 0.0) {
        return fail(format!("δ = {d} is not positive"));
    }
    let mut rotated = state;
    let phase = C64::from_polar(1.0, 2.2);
    for z in rotated.minus.iter_mut().chain(rotated.plus.iter_mut()) {
        *z *= phase;
    }
    let d2 = delta_metric_for_state(&rotated, &params).map_err(|e| e.to_string())?;
    if (d - d2).abs() >= 1e-13 * d {
        return fail(format!("δ moved under a global phase: {d} vs {d2}"));
    }
    Ok(())
}

fn delta_b_sign_symmetry() -> CheckResult {
    let k = 0.5;
    for order in [CorrectionOrder::Zero, CorrectionOrder::First] {
        for label in [LandauLabel::Ground, LandauLabel::excited(Sign::Plus, 2).unwrap()] {
            let first = order == CorrectionOrder::First;
            let p_pos = PhysicalParams::new(0.1, 1.0, 1.0).unwrap();
            let p_neg = PhysicalParams::new(0.1, -1.0, 1.0).unwrap();
            let g_pos = state_grid(label, first, k, 1.0, 0.1).unwrap();
            let g_neg = state_grid(label.lambda_flipped(), first, -k, -1.0, 0.1).unwrap();
            let d_pos =
                delta_metric(label, order, k, &p_pos, &g_pos).map_err(|e| e.to_string())?;
            let d_neg = delta_metric(label.lambda_flipped(), order, -k, &p_neg, &g_neg)
                .map_err(|e| e.to_string())?;
            if (d_pos - d_neg).abs() >= 1e-10 {
                return fail(format!("B↦−B mismatch for {label}: {d_pos} vs {d_neg}"));
            }
        }
    }
    Ok(())
}

// ---- report layer ----

fn report_reproducibility() -> CheckResult {
    let build = || {
        let mut r = Report::new("verify-demo", &["x", "y"]);
        r.add_meta_float("mass", 1.0);
        for i in 0..8 {
            r.push_row(vec![Value::Int(i), Value::Float((i as f64).sin() * 1e-7)])
                .unwrap();
        }
        r.to_bytes()
    };
    if build() != build() {
        return fail("identical reports rendered different bytes".into());
    }
    Ok(())
}

fn report_finite_guard() -> CheckResult {
    let mut r = Report::new("verify-demo", &["x"]);
    match r.push_row(vec![Value::Float(f64::INFINITY)]) {
        Err(e) if e.exit_code() == 2 => Ok(()),
        _ => fail("non-finite row slipped through".into()),
    }
}

pub fn all_checks() -> Vec<Check> {
    vec![
        Check { name: "walk: coin unitarity", run: coin_unitarity },
        Check { name: "walk: norm conservation", run: walk_norm_conservation },
        Check { name: "walk: mode equivalence", run: walk_mode_equivalence },
        Check { name: "walk: sublattice parity", run: walk_sublattice_parity },
        Check { name: "walk: determinism", run: walk_determinism },
        Check { name: "spectral: hermite orthonormality", run: hermite_orthonormality },
        Check { name: "spectral: spin normalization", run: spin_normalization },
        Check { name: "spectral: eigenstate orthonormality", run: eigenstate_orthonormality },
        Check { name: "spectral: eigenstate residual", run: eigenstate_residual },
        Check { name: "spectral: h1 diagonal vanishes", run: h1_diagonal_vanishes },
        Check { name: "spectral: h1 selection rule", run: h1_selection_rule },
        Check { name: "spectral: h1 closed vs quadrature", run: h1_closed_vs_quadrature },
        Check { name: "spectral: dense eigensolver crosscheck", run: dense_eigensolver_crosscheck },
        Check { name: "spectral: first-order orthogonality", run: delta1_orthogonality },
        Check { name: "spectral: first-order density signs", run: first_order_density_signs },
        Check { name: "propagator: Q unitarity", run: q_unitarity },
        Check { name: "propagator: shift exactness", run: shift_exactness },
        Check { name: "propagator: dft roundtrip + parseval", run: dft_roundtrip_parseval },
        Check { name: "propagator: fourier/step commutation", run: fourier_step_commutation },
        Check { name: "propagator: H_num hermiticity", run: hnum_hermiticity },
        Check { name: "propagator: eigenphase consistency", run: eigenphase_consistency },
        Check { name: "propagator: delta positivity + phase invariance", run: delta_positivity_and_phase_invariance },
        Check { name: "propagator: delta B-sign symmetry", run: delta_b_sign_symmetry },
        Check { name: "report: byte reproducibility", run: report_reproducibility },
        Check { name: "report: finite-row guard", run: report_finite_guard },
    ]
}

/// Run every check, print one line each, return the number of failures.
pub fn run_verify(out: &mut impl Write) -> std::io::Result<usize> {
    let checks = all_checks();
    let mut failures = 0;
    for check in &checks {
        match (check.run)() {
            Ok(()) => writeln!(out, "PASS  {}", check.name)?,
            Err(msg) => {
                failures += 1;
                writeln!(out, "FAIL  {} — {msg}", check.name)?;
            }
        }
    }
    writeln!(out, "{} of {} checks passed", checks.len() - failures, checks.len())?;
    Ok(failures)
}
