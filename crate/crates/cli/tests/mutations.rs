//! Sensitivity of the verify invariants to injected implementation bugs: a
//! sign error in θ⁻ must trip the mode-equivalence check, and a botched
//! matrix logarithm must trip the Hermiticity / quasi-energy checks.

use num_complex::Complex64 as C64;

use dtqw::propagator::{build_q, unitary_eigendecomposition, Boundary};
use dtqw::walk::{step, Spinor, SpinorLattice, StepMode};
use dtqw::xgrid::XGrid;
use dtqw::{angle_alpha, angle_theta, coin_matrices, PhysicalParams, Sign};

/// Reference split-step walker built directly from the coin matrices, with an
/// optional sign sabotage on θ⁻.
fn hand_two_half_step(state: &SpinorLattice, flip_theta_minus: bool) -> SpinorLattice {
    let params = *state.params();
    let theta_plus = angle_theta(Sign::Plus, &params);
    let theta_minus = angle_theta(Sign::Minus, &params) * if flip_theta_minus { -1.0 } else { 1.0 };
    let wrap = |v: i64, lo: i64, hi: i64| {
        if v > hi {
            lo
        } else if v < lo {
            hi
        } else {
            v
        }
    };
    let mut half = SpinorLattice::with_dims(state.n_p(), state.n_q(), params);
    for q in state.q_min()..=state.q_max() {
        for p in state.p_min()..=state.p_max() {
            let (u, _) = coin_matrices(angle_alpha(p, &params), theta_plus);
            let from_l = state.get(wrap(p + 1, state.p_min(), state.p_max()), q).l;
            let from_r = state.get(wrap(p - 1, state.p_min(), state.p_max()), q).r;
            half.set(
                p,
                q,
                Spinor {
                    l: u[(0, 0)] * from_l + u[(0, 1)] * from_r,
                    r: u[(1, 0)] * from_l + u[(1, 1)] * from_r,
                },
            );
        }
    }
    let mut out = SpinorLattice::with_dims(state.n_p(), state.n_q(), params);
    for q in state.q_min()..=state.q_max() {
        for p in state.p_min()..=state.p_max() {
            let (_, v) = coin_matrices(angle_alpha(p, &params), theta_minus);
            let from_l = half.get(p, wrap(q + 1, state.q_min(), state.q_max())).l;
            let from_r = half.get(p, wrap(q - 1, state.q_min(), state.q_max())).r;
            out.set(
                p,
                q,
                Spinor {
                    l: v[(0, 0)] * from_l + v[(0, 1)] * from_r,
                    r: v[(1, 0)] * from_l + v[(1, 1)] * from_r,
                },
            );
        }
    }
    out
}

fn max_diff(a: &SpinorLattice, b: &SpinorLattice) -> f64 {
    let (al, ar) = a.components();
    let (bl, br) = b.components();
    al.iter()
        .zip(bl)
        .chain(ar.iter().zip(br))
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max)
}

#[test]
fn theta_minus_sign_error_breaks_mode_equivalence() {
    let params = PhysicalParams::new(0.8, 0.6, 1.1).unwrap();
    let mut state = SpinorLattice::centered(6, 6, params);
    state.set(0, 0, Spinor { l: C64::new(0.6, 0.0), r: C64::new(0.0, -0.8) });
    state.set(2, -1, Spinor { l: C64::new(0.3, 0.4), r: C64::default() });
    let reference = step(&state, StepMode::Composed);

    // faithful hand-rolled split step agrees with the library
    let healthy = hand_two_half_step(&state, false);
    assert!(max_diff(&reference, &healthy) < 1e-12);

    // the injected sign error is far outside the 1e-12 equivalence tolerance
    let mutated = hand_two_half_step(&state, true);
    let diff = max_diff(&reference, &mutated);
    assert!(diff > 1e-3, "sign error went unnoticed: diff {diff:.2e}");
}

#[test]
fn botched_matrix_log_breaks_hermiticity_and_branch_checks() {
    let params = PhysicalParams::new(0.25, 1.0, 1.0).unwrap();
    let grid = XGrid::centered(0.25, 16);
    let q = build_q(&params, 0.1, &grid, Boundary::Periodic);
    let (phases, vectors) = unitary_eigendecomposition(&q.matrix).unwrap();

    // classic reassembly bug: transpose instead of conjugate-transpose
    let mut scaled = vectors.clone();
    for (col, &phi) in phases.iter().enumerate() {
        scaled.column_mut(col).scale_mut(-phi / params.epsilon());
    }
    let h_bug = &scaled * vectors.transpose();
    let defect = (&h_bug - h_bug.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    assert!(defect > 1e-6, "transpose bug stayed Hermitian: defect {defect:.2e}");

    // wrong branch: shifting a negative eigenphase by 2π pushes the
    // quasi-energy outside the principal window (−π/ε, π/ε]
    let shifted = phases
        .iter()
        .map(|&phi| if phi < 0.0 { phi + 2.0 * std::f64::consts::PI } else { phi });
    let bound = std::f64::consts::PI / params.epsilon();
    let worst = shifted.map(|phi| (-phi / params.epsilon()).abs()).fold(0.0f64, f64::max);
    assert!(
        worst > bound,
        "2π branch shift stayed inside the quasi-energy window: {worst} <= {bound}"
    );
}
