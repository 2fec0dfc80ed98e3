//! Experiment implementations behind the subcommands. Each returns a
//! [`Report`] so callers (CLI and tests) can inspect the same data that is
//! written to disk.

use dtqw::landau::{density_profile, eigenstate0, state_grid, LandauLabel};
use dtqw::perturb::{first_order_state, CorrectionOrder};
use dtqw::propagator::{delta_metric, scaling_slope};
use dtqw::walk::{
    density_and_spread, evolve_observed, front_maxima, gaussian_state, GaussianSpec,
    StepMode,
};
use dtqw::{Error, PhysicalParams, Sign};

use crate::args::{DensityArgs, EnergiesArgs, ProfilesArgs, ScalingArgs, SpreadArgs};
use crate::error::{CliError, CliResult};
use crate::report::{Report, Value};

fn parse_labels(raw: &[String]) -> CliResult<Vec<LandauLabel>> {
    if raw.is_empty() {
        return Err(CliError::Validation("at least one --label is required".into()));
    }
    raw.iter()
        .map(|s| s.parse::<LandauLabel>().map_err(|e| CliError::Validation(e.to_string())))
        .collect()
}

fn require_nonzero_field(values: &[f64]) -> CliResult<()> {
    if values.iter().any(|&b| b == 0.0) {
        return Err(CliError::Validation(
            "zero-field value in --b-field: Landau levels need B != 0".into(),
        ));
    }
    Ok(())
}

fn check_grid_cap(half_extent: usize, max_cells: usize) -> CliResult<usize> {
    let side = 2 * half_extent + 1;
    let cells = side * side;
    if cells > max_cells {
        return Err(CliError::Guard(Error::GridTooLarge { cells, cap: max_cells }));
    }
    Ok(cells)
}

/// Default field sweep for `energies`: ±k·0.05 for k = 1..=40, ascending,
/// split around zero.
fn default_b_sweep() -> Vec<f64> {
    let mut v: Vec<f64> = (1..=40).map(|k| -(k as f64) * 0.05).rev().collect();
    v.extend((1..=40).map(|k| k as f64 * 0.05));
    v
}

pub fn cmd_energies(args: &EnergiesArgs) -> CliResult<Report> {
    let b_values = if args.b_field.is_empty() { default_b_sweep() } else { args.b_field.clone() };
    require_nonzero_field(&b_values)?;
    if args.mass < 0.0 {
        return Err(CliError::Validation("--mass must be >= 0".into()));
    }
    let mut labels = vec![LandauLabel::Ground];
    for n in 1..=args.n_max {
        labels.push(LandauLabel::excited(Sign::Plus, n).map_err(CliError::from)?);
        labels.push(LandauLabel::excited(Sign::Minus, n).map_err(CliError::from)?);
    }
    let mut report = Report::new("energies", &["b_field", "label", "energy"]);
    report.add_meta_float("mass", args.mass);
    report.add_meta("n_max", args.n_max);
    for &b in &b_values {
        for &label in &labels {
            let e = dtqw::landau::landau_energy0(label, b, args.mass)?;
            report.push_row(vec![
                Value::Float(b),
                Value::Text(label.to_string()),
                Value::Float(e),
            ])?;
        }
    }
    Ok(report)
}

pub fn cmd_profiles(args: &ProfilesArgs) -> CliResult<Report> {
    require_nonzero_field(&[args.b_field])?;
    if args.epsilon <= 0.0 {
        return Err(CliError::Validation("--epsilon must be > 0".into()));
    }
    if args.order > 1 {
        return Err(CliError::Validation("--order must be 0 or 1".into()));
    }
    let labels = parse_labels(&args.label)?;
    let value_column = if args.order == 0 { "density" } else { "density_difference" };
    let mut report = Report::new("profiles", &["label", "x", value_column]);
    report.add_meta_float("k", args.k);
    report.add_meta_float("b_field", args.b_field);
    report.add_meta_float("mass", args.mass);
    report.add_meta_float("epsilon", args.epsilon);
    report.add_meta("order", args.order);
    for &label in &labels {
        let grid = state_grid(label, args.order == 1, args.k, args.b_field, args.epsilon)?;
        let base = eigenstate0(label, args.k, args.b_field, args.mass, &grid)?;
        let p0 = density_profile(&base);
        if args.order == 0 {
            for (i, &p) in p0.iter().enumerate() {
                report.push_row(vec![
                    Value::Text(label.to_string()),
                    Value::Float(grid.x(i)),
                    Value::Float(p),
                ])?;
            }
        } else {
            let first = first_order_state(
                label,
                args.k,
                args.b_field,
                args.mass,
                args.epsilon,
                &grid,
            )?;
            let p1 = density_profile(&first);
            // the order-1 state is normalized before differencing so the two
            // densities carry equal total probability
            let norm1: f64 = p1.iter().sum::<f64>() * grid.epsilon();
            for (i, (&a, &b)) in p1.iter().zip(&p0).enumerate() {
                report.push_row(vec![
                    Value::Text(label.to_string()),
                    Value::Float(grid.x(i)),
                    Value::Float(a / norm1 - b),
                ])?;
            }
        }
    }
    Ok(report)
}

pub fn cmd_scaling(args: &ScalingArgs) -> CliResult<Report> {
    require_nonzero_field(&[args.b_field])?;
    if args.epsilon.iter().any(|&e| e <= 0.0) {
        return Err(CliError::Validation("--epsilon entries must be > 0".into()));
    }
    let labels = parse_labels(&args.label)?;
    let mut report = Report::new("scaling", &["epsilon", "label", "delta0", "delta1"]);
    report.add_meta_float("b_field", args.b_field);
    report.add_meta_float("mass", args.mass);
    report.add_meta_float("k", args.k);
    let mut slope_meta = Vec::new();
    for &label in &labels {
        let mut d0s = Vec::with_capacity(args.epsilon.len());
        let mut d1s = Vec::with_capacity(args.epsilon.len());
        for &eps in &args.epsilon {
            let params = PhysicalParams::new(eps, args.b_field, args.mass)?;
            let grid0 = state_grid(label, false, args.k, args.b_field, eps)?;
            let grid1 = state_grid(label, true, args.k, args.b_field, eps)?;
            let d0 = delta_metric(label, CorrectionOrder::Zero, args.k, &params, &grid0)?;
            let d1 = delta_metric(label, CorrectionOrder::First, args.k, &params, &grid1)?;
            d0s.push(d0);
            d1s.push(d1);
            report.push_row(vec![
                Value::Float(eps),
                Value::Text(label.to_string()),
                Value::Float(d0),
                Value::Float(d1),
            ])?;
        }
        if args.epsilon.len() >= 3 {
            let s0 = scaling_slope(&args.epsilon, &d0s)?;
            let s1 = scaling_slope(&args.epsilon, &d1s)?;
            slope_meta.push((format!("slope_r0 {label}"), s0));
            slope_meta.push((format!("slope_r1 {label}"), s1));
        }
    }
    for (key, slope) in slope_meta {
        report.add_meta_float(&key, slope);
    }
    Ok(report)
}

/// Spread time series for each field value; σ_p = σ_q is also checked here
/// and surfaced in the metadata as the largest relative mismatch seen.
pub fn cmd_spread(args: &SpreadArgs, max_cells: usize) -> CliResult<Report> {
    if args.mass < 0.0 {
        return Err(CliError::Validation("--mass must be >= 0".into()));
    }
    let spec = GaussianSpec::new(args.width)?;
    let half = args.half_extent.unwrap_or(args.steps + 1);
    check_grid_cap(half, max_cells)?;
    let mut report = Report::new("spread", &["j", "b_field", "sigma_p", "sigma_q"]);
    report.add_meta_float("width", args.width);
    report.add_meta_float("mass", args.mass);
    report.add_meta("steps", args.steps);
    report.add_meta("half_extent", half);
    let mut worst_mismatch = 0.0f64;
    for &b in &args.b_field {
        let params = PhysicalParams::new(1.0, b, args.mass)?;
        let init = gaussian_state(spec, half, half, params);
        let mut rows = Vec::with_capacity(args.steps + 1);
        evolve_observed(&init, args.steps, StepMode::Composed, args.allow_wrap, |j, s| {
            let (_, sp, sq) = density_and_spread(s);
            rows.push((j, sp, sq));
        })?;
        for (j, sp, sq) in rows {
            if sp > 0.0 {
                worst_mismatch = worst_mismatch.max((sp - sq).abs() / sp);
            }
            report.push_row(vec![
                Value::Int(j as i64),
                Value::Float(b),
                Value::Float(sp),
                Value::Float(sq),
            ])?;
        }
    }
    report.add_meta_float("max_spread_anisotropy", worst_mismatch);
    Ok(report)
}

pub fn cmd_density(args: &DensityArgs, max_cells: usize) -> CliResult<Report> {
    if args.mass < 0.0 {
        return Err(CliError::Validation("--mass must be >= 0".into()));
    }
    let spec = GaussianSpec::new(args.width)?;
    let half = args.half_extent.unwrap_or(args.steps + 1);
    check_grid_cap(half, max_cells)?;
    let params = PhysicalParams::new(1.0, args.b_field, args.mass)?;
    let init = gaussian_state(spec, half, half, params);
    let final_state =
        evolve_observed(&init, args.steps, StepMode::Composed, args.allow_wrap, |_, _| {})?;
    let (field, sigma_p, sigma_q) = density_and_spread(&final_state);
    let mut report = Report::new("density", &["p", "q", "density"]);
    report.add_meta_float("width", args.width);
    report.add_meta_float("b_field", args.b_field);
    report.add_meta_float("mass", args.mass);
    report.add_meta("steps", args.steps);
    report.add_meta("half_extent", half);
    report.add_meta_float("total_probability", final_state.total_probability());
    report.add_meta_float("sigma_p", sigma_p);
    report.add_meta_float("sigma_q", sigma_q);
    if let Some(fm) = front_maxima(&field, args.steps) {
        report.add_meta_float("front_left", fm.left);
        report.add_meta_float("front_right", fm.right);
        report.add_meta_float("front_top", fm.top);
        report.add_meta_float("front_bottom", fm.bottom);
        if fm.right > 0.0 {
            report.add_meta_float("front_left_right_ratio", fm.left / fm.right);
        }
    }
    for q in field.q_min..=field.q_max() {
        for p in field.p_min..=field.p_max() {
            report.push_row(vec![
                Value::Int(p),
                Value::Int(q),
                Value::Float(field.get(p, q)),
            ])?;
        }
    }
    Ok(report)
}
