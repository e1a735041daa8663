//! Trajectory audits: maximum-principle bounds, evolution-equation
//! residuals, and the extension-theorem contrapositive.
//!
//! Every check is a pure function of the trajectory, so re-running a report
//! reproduces identical numbers. Bounds carry a small relative slack to
//! absorb discretization noise.

use crate::flow::{average_mean_curvature, rhs, FlowKind, FlowTrajectory, Termination};
use crate::profile::GeometricState;
use serde::Serialize;
use thiserror::Error;

/// Relative slack applied to the monitored inequalities.
pub const REL_SLACK: f64 = 1e-6;

/// Minimum growth factor of `max |H|` expected across a singular run.
pub const GROWTH_MIN: f64 = 10.0;

#[derive(Debug, Error, PartialEq)]
pub enum MonitorError {
    #[error("check requires a {expected} trajectory, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },
    #[error("logged max |H| {observed:e} exceeds the supplied bound {bound:e}")]
    HNotBounded { observed: f64, bound: f64 },
    #[error("need at least 3 consecutive snapshots at a fixed step size")]
    InsufficientSnapshots,
}

/// One audited inequality: `passed` iff `worst_violation <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub worst_violation: f64,
    pub at_time: f64,
    pub passed: bool,
    pub tolerance: f64,
}

impl CheckRecord {
    fn new(name: &str, worst_violation: f64, at_time: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            worst_violation,
            at_time,
            passed: worst_violation <= tolerance,
            tolerance,
        }
    }
}

/// Constants observed along a run, in the roles they play in the bounds:
/// `c2 <= h <= c3`, `vy <= c4`, `k/p <= c1`, `|k|/p <= c0 = 1 + C c4`.
#[derive(Debug, Clone, Serialize)]
pub struct ObservedConstants {
    pub c0: f64,
    pub c1: f64,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub c4: f64,
}

#[derive(Debug, Clone)]
pub struct MonitorReport {
    pub checks: Vec<CheckRecord>,
    pub constants: ObservedConstants,
}

impl MonitorReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn observed_h_range(traj: &FlowTrajectory) -> (f64, f64, f64) {
    let mut min_h = f64::INFINITY;
    let mut max_h = f64::NEG_INFINITY;
    let mut at = 0.0;
    for row in &traj.step_log {
        if row.h < min_h {
            min_h = row.h;
            at = row.t;
        }
        max_h = max_h.max(row.h);
    }
    (min_h, max_h, at)
}

fn observed_max_abs_h(traj: &FlowTrajectory) -> (f64, f64) {
    let mut best = f64::NEG_INFINITY;
    let mut at = 0.0;
    for row in &traj.step_log {
        if row.max_h > best {
            best = row.max_h;
            at = row.t;
        }
    }
    (best, at)
}

/// Positivity of the average mean curvature along a volume-preserving run;
/// the observed range gives the constants `c2` and `c3`.
pub fn check_h_bounds(traj: &FlowTrajectory) -> Result<CheckRecord, MonitorError> {
    if traj.kind != FlowKind::VolumePreserving {
        return Err(MonitorError::WrongKind {
            expected: "volume",
            got: traj.kind.name(),
        });
    }
    let (min_h, _, at) = observed_h_range(traj);
    Ok(CheckRecord::new("h_bounds", -min_h, at, 0.0))
}

/// Maximum principle for `vy`: never above its initial maximum, with the
/// additive slack `c3 t` on volume-preserving runs.
pub fn check_vy(traj: &FlowTrajectory) -> CheckRecord {
    check_vy_with(traj, REL_SLACK)
}

pub fn check_vy_with(traj: &FlowTrajectory, slack: f64) -> CheckRecord {
    let vy0 = traj.initial_record().max_vy;
    let c3 = match traj.kind {
        FlowKind::VolumePreserving => observed_h_range(traj).1,
        FlowKind::MeanCurvature => 0.0,
    };
    let mut worst = f64::NEG_INFINITY;
    let mut at = 0.0;
    for row in &traj.step_log {
        let bound = vy0 + c3 * row.t;
        let violation = row.max_vy - bound;
        if violation > worst {
            worst = violation;
            at = row.t;
        }
    }
    CheckRecord::new("vy_max_principle", worst, at, slack * vy0)
}

/// Maximum principle for the curvature ratio:
/// `k/p <= c1 = max(1, initial max k/p)`.
pub fn check_k_over_p(traj: &FlowTrajectory) -> CheckRecord {
    check_k_over_p_with(traj, REL_SLACK)
}

pub fn check_k_over_p_with(traj: &FlowTrajectory, slack: f64) -> CheckRecord {
    let c1 = traj.initial_record().max_k_over_p.max(1.0);
    let mut worst = f64::NEG_INFINITY;
    let mut at = 0.0;
    for row in &traj.step_log {
        let violation = row.max_k_over_p - c1;
        if violation > worst {
            worst = violation;
            at = row.t;
        }
    }
    CheckRecord::new("k_over_p_max_principle", worst, at, slack * c1)
}

/// The `vy` bound constant implied by the trajectory's own initial data:
/// `max_0 vy` for mean curvature flow, plus `c3 T` on volume runs.
pub fn vy_bound_constant(traj: &FlowTrajectory) -> f64 {
    let vy0 = traj.initial_record().max_vy;
    match traj.kind {
        FlowKind::MeanCurvature => vy0,
        FlowKind::VolumePreserving => vy0 + observed_h_range(traj).1 * traj.final_time(),
    }
}

/// Bounded-`H` curvature ratio bound: `|k|/p <= 1 + C c4` where the caller
/// supplies the mean-curvature bound `C` (normally the observed `max |H|`).
/// Audited over the stored snapshots; the step log keeps only the signed
/// ratio.
pub fn check_abs_k_over_p(traj: &FlowTrajectory, c: f64) -> Result<CheckRecord, MonitorError> {
    check_abs_k_over_p_with(traj, c, REL_SLACK)
}

pub fn check_abs_k_over_p_with(
    traj: &FlowTrajectory,
    c: f64,
    slack: f64,
) -> Result<CheckRecord, MonitorError> {
    let (observed, _) = observed_max_abs_h(traj);
    if observed > c {
        return Err(MonitorError::HNotBounded { observed, bound: c });
    }
    let c4 = vy_bound_constant(traj);
    let c0 = 1.0 + c * c4;
    let mut worst = f64::NEG_INFINITY;
    let mut at = 0.0;
    for snap in &traj.snapshots {
        let state = snap.profile.geometric_state();
        let violation = state.max_abs_k_over_p() - c0;
        if violation > worst {
            worst = violation;
            at = snap.t;
        }
    }
    Ok(CheckRecord::new(
        "abs_k_over_p_bound",
        worst,
        at,
        slack * c0,
    ))
}

/// Outcome of the extension-theorem contrapositive audit. A singular
/// termination whose `max |H|` did not also blow up contradicts
/// "bounded H implies bounded |A|" and is flagged as a solver defect.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionVerdict {
    pub singular: bool,
    pub h_growth_factor: f64,
    pub growth_min: f64,
    pub theorem_violation: bool,
    pub passed: bool,
    pub at_time: f64,
}

impl ExtensionVerdict {
    pub fn as_check(&self) -> CheckRecord {
        let worst = if self.singular {
            self.growth_min - self.h_growth_factor
        } else {
            0.0
        };
        CheckRecord::new("extension_criterion", worst, self.at_time, 0.0)
    }
}

pub fn extension_criterion(traj: &FlowTrajectory) -> ExtensionVerdict {
    extension_criterion_with(traj, GROWTH_MIN)
}

pub fn extension_criterion_with(traj: &FlowTrajectory, growth_min: f64) -> ExtensionVerdict {
    let singular = matches!(
        traj.termination,
        Termination::BlowupDetected | Termination::PinchDetected
    );
    let h0 = traj.initial_record().max_h;
    let (peak, at_time) = observed_max_abs_h(traj);
    let h_growth_factor = if h0 > 0.0 { peak / h0 } else { f64::INFINITY };
    let theorem_violation = singular && h_growth_factor < growth_min;
    ExtensionVerdict {
        singular,
        h_growth_factor,
        growth_min,
        theorem_violation,
        passed: !theorem_violation,
        at_time,
    }
}

/// Quantities whose evolution equations can be residual-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolvedField {
    Y,
    V,
    K,
    P,
    H,
}

impl EvolvedField {
    pub fn name(&self) -> &'static str {
        match self {
            EvolvedField::Y => "y",
            EvolvedField::V => "v",
            EvolvedField::K => "k",
            EvolvedField::P => "p",
            EvolvedField::H => "H",
        }
    }

    fn array<'a>(&self, state: &'a GeometricState) -> &'a [f64] {
        match self {
            EvolvedField::Y => &state.y,
            EvolvedField::V => &state.v,
            EvolvedField::K => &state.k,
            EvolvedField::P => &state.p,
            EvolvedField::H => &state.h,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResidualEntry {
    pub field: EvolvedField,
    pub max_residual: f64,
    pub at_time: f64,
}

/// Central difference with even (mirror) end reflection, matching the
/// symmetry of all monitored quantities at the Neumann ends.
fn central_diff_even(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len() - 1;
    let g = |i: isize| -> f64 {
        let j = if i < 0 {
            -i
        } else if i > n as isize {
            2 * n as isize - i
        } else {
            i
        };
        f[j as usize]
    };
    (0..=n as isize)
        .map(|j| (g(j + 1) - g(j - 1)) / (2.0 * dx))
        .collect()
}

/// Residuals of the evolution equations along stored snapshot triples.
///
/// The material time derivative at a surface point is recovered from the
/// node values by centred time differencing plus the tangential advection
/// correction `-rho_t rho' / (1 + rho'^2) * f'`; nodes track the axis
/// coordinate, not the surface point. The right-hand sides use the flow
/// kind's equations (`h` terms present only for volume-preserving flow).
pub fn evolution_residuals(
    traj: &FlowTrajectory,
    which: &[EvolvedField],
) -> Result<Vec<ResidualEntry>, MonitorError> {
    let snaps = &traj.snapshots;
    let mut triples = Vec::new();
    for i in 1..snaps.len().saturating_sub(1) {
        let dt_back = snaps[i].t - snaps[i - 1].t;
        let dt_fwd = snaps[i + 1].t - snaps[i].t;
        if dt_back > 0.0 && (dt_fwd - dt_back).abs() <= 1e-9 * dt_back {
            triples.push(i);
        }
    }
    if triples.is_empty() {
        return Err(MonitorError::InsufficientSnapshots);
    }

    let mut entries: Vec<ResidualEntry> = which
        .iter()
        .map(|&field| ResidualEntry {
            field,
            max_residual: 0.0,
            at_time: 0.0,
        })
        .collect();

    for &i in &triples {
        let prev = snaps[i - 1].profile.geometric_state();
        let mid_profile = &snaps[i].profile;
        let mid = mid_profile.geometric_state();
        let next = snaps[i + 1].profile.geometric_state();
        let dt = snaps[i].t - snaps[i - 1].t;
        let dx = mid.dx;

        let speed = rhs(mid_profile, traj.kind);
        let (rho1, _) = mid_profile.derivatives();
        let drift: Vec<f64> = (0..mid.n_nodes())
            .map(|j| -speed[j] * rho1[j] / (1.0 + rho1[j] * rho1[j]))
            .collect();
        let h_bar = match traj.kind {
            FlowKind::VolumePreserving => average_mean_curvature(&mid),
            FlowKind::MeanCurvature => 0.0,
        };

        for entry in entries.iter_mut() {
            let f_prev = entry.field.array(&prev);
            let f_mid = entry.field.array(&mid);
            let f_next = entry.field.array(&next);
            let fp = central_diff_even(f_mid, dx);
            let lap = mid_profile.surface_laplacian(f_mid);
            for j in 0..mid.n_nodes() {
                let lhs = (f_next[j] - f_prev[j]) / (2.0 * dt) + drift[j] * fp[j];
                let rhs_val = match entry.field {
                    EvolvedField::Y => lap[j] - 1.0 / mid.y[j] + h_bar * mid.p[j] * mid.y[j],
                    EvolvedField::V => {
                        lap[j] - mid.a2[j] * mid.v[j] + mid.v[j] / (mid.y[j] * mid.y[j])
                            - 2.0 * fp[j] * fp[j] / (mid.v[j] * mid.v[j] * mid.v[j])
                    }
                    EvolvedField::K => {
                        lap[j] + mid.a2[j] * mid.k[j]
                            - 2.0 * mid.q[j] * mid.q[j] * (mid.k[j] - mid.p[j])
                            - h_bar * mid.k[j] * mid.k[j]
                    }
                    EvolvedField::P => {
                        lap[j]
                            + mid.a2[j] * mid.p[j]
                            + 2.0 * mid.q[j] * mid.q[j] * (mid.k[j] - mid.p[j])
                            - h_bar * mid.p[j] * mid.p[j]
                    }
                    EvolvedField::H => lap[j] + (mid.h[j] - h_bar) * mid.a2[j],
                };
                let res = (lhs - rhs_val).abs();
                if res > entry.max_residual {
                    entry.max_residual = res;
                    entry.at_time = snaps[i].t;
                }
            }
        }
    }
    Ok(entries)
}

/// Runs every check applicable to the trajectory's flow kind.
pub fn report(traj: &FlowTrajectory) -> MonitorReport {
    let mut checks = Vec::new();
    let (c2, c3) = match traj.kind {
        FlowKind::VolumePreserving => {
            checks.push(check_h_bounds(traj).expect("kind checked above"));
            let (min_h, max_h, _) = observed_h_range(traj);
            (Some(min_h), Some(max_h))
        }
        FlowKind::MeanCurvature => (None, None),
    };
    checks.push(check_vy(traj));
    checks.push(check_k_over_p(traj));
    let (c_bound, _) = observed_max_abs_h(traj);
    checks.push(check_abs_k_over_p(traj, c_bound).expect("bound is the observed max"));
    checks.push(extension_criterion(traj).as_check());

    let c4 = vy_bound_constant(traj);
    let constants = ObservedConstants {
        c0: 1.0 + c_bound * c4,
        c1: traj.initial_record().max_k_over_p.max(1.0),
        c2,
        c3,
        c4,
    };
    MonitorReport { checks, constants }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{run, FlowConfig, Snapshot, StepRecord, DEFAULT_CFL};
    use crate::profile::{AxisInterval, RadiusProfile};
    use std::f64::consts::PI;

    fn unit_interval() -> AxisInterval {
        AxisInterval::new(0.0, 1.0).unwrap()
    }

    fn cylinder(r: f64, n: usize) -> RadiusProfile {
        RadiusProfile::from_fn(unit_interval(), n, |_| r).unwrap()
    }

    fn config(kind: FlowKind, t_end: f64, n_cells: usize) -> FlowConfig {
        FlowConfig {
            kind,
            t_end,
            dt_init: 1.0,
            cfl: DEFAULT_CFL,
            blowup_a2: 1e8,
            snapshot_every: 500,
            n_cells,
        }
    }

    /// Trajectory with a single logged state, for geometry-only audits.
    fn geometry_only(profile: &RadiusProfile, kind: FlowKind) -> FlowTrajectory {
        let state = profile.geometric_state();
        let row = StepRecord {
            t: 0.0,
            dt: 0.0,
            h: average_mean_curvature(&state),
            max_a: state.max_a2().sqrt(),
            max_h: state.max_abs_h(),
            min_rho: profile.min_rho(),
            max_vy: state.max_vy(),
            max_k_over_p: state.max_k_over_p(),
            volume: state.enclosed_volume,
        };
        FlowTrajectory {
            kind,
            snapshots: vec![Snapshot {
                step: 0,
                t: 0.0,
                profile: profile.clone(),
            }],
            step_log: vec![row],
            termination: Termination::ReachedTEnd,
        }
    }

    #[test]
    fn h_bounds_on_stationary_cylinder() {
        let n = 48;
        let traj = run(
            &cylinder(1.0, n),
            &config(FlowKind::VolumePreserving, 0.05, n),
        );
        let rec = check_h_bounds(&traj).unwrap();
        assert!(rec.passed);
        let report = report(&traj);
        assert_eq!(report.constants.c2, Some(1.0));
        assert_eq!(report.constants.c3, Some(1.0));
    }

    #[test]
    fn h_stays_inside_the_initial_envelope_on_the_perturbed_cylinder() {
        // Regression envelope: the average mean curvature of the relaxing
        // perturbed cylinder never leaves [h(0)/2, 2 h(0)] before t = 0.2.
        let n = 96;
        let profile =
            RadiusProfile::from_fn(unit_interval(), n, |x| 1.0 + 0.1 * (2.0 * PI * x).cos())
                .unwrap();
        let traj = run(&profile, &config(FlowKind::VolumePreserving, 0.2, n));
        assert!(check_h_bounds(&traj).unwrap().passed);
        let h0 = traj.step_log[0].h;
        let rep = report(&traj);
        assert!(rep.constants.c2.unwrap() >= 0.5 * h0);
        assert!(rep.constants.c3.unwrap() <= 2.0 * h0);
    }

    #[test]
    fn h_bounds_rejects_mcf_runs() {
        let n = 32;
        let traj = run(&cylinder(1.0, n), &config(FlowKind::MeanCurvature, 0.01, n));
        assert_eq!(
            check_h_bounds(&traj),
            Err(MonitorError::WrongKind {
                expected: "volume",
                got: "mcf"
            })
        );
    }

    #[test]
    fn h_bounds_fails_on_fabricated_nonpositive_h() {
        let mut traj = geometry_only(&cylinder(1.0, 32), FlowKind::VolumePreserving);
        let mut row = traj.step_log[0];
        row.t = 0.5;
        row.h = -1.0;
        traj.step_log.push(row);
        let rec = check_h_bounds(&traj).unwrap();
        assert!(!rec.passed);
        assert_eq!(rec.worst_violation, 1.0);
        assert_eq!(rec.at_time, 0.5);
    }

    #[test]
    fn vy_decreases_on_a_shrinking_cylinder() {
        let n = 48;
        let traj = run(&cylinder(1.0, n), &config(FlowKind::MeanCurvature, 0.2, n));
        let rec = check_vy(&traj);
        assert!(rec.passed);
        assert!(rec.worst_violation <= 0.0);
    }

    #[test]
    fn vy_on_stationary_volume_run_uses_linear_slack() {
        let n = 48;
        let traj = run(
            &cylinder(1.0, n),
            &config(FlowKind::VolumePreserving, 0.05, n),
        );
        let rec = check_vy(&traj);
        assert!(rec.passed);
        assert!(rec.worst_violation <= 1e-10);
    }

    #[test]
    fn k_over_p_bounds() {
        let n = 48;
        let traj = run(&cylinder(1.0, n), &config(FlowKind::MeanCurvature, 0.1, n));
        let rec = check_k_over_p(&traj);
        assert!(rec.passed);

        // Catenoid geometry: k/p = -1 everywhere in the interior, well
        // under the bound c1 = 1.
        let catenoid =
            RadiusProfile::from_fn(unit_interval(), 64, |x| 0.8 * ((x - 0.5) / 0.8).cosh())
                .unwrap();
        let state = catenoid.geometric_state();
        for j in 1..64 {
            let ratio = state.k[j] / state.p[j];
            assert!((ratio + 1.0).abs() <= 1e-3, "k/p = {ratio}");
        }
        let traj = geometry_only(&catenoid, FlowKind::MeanCurvature);
        assert!(check_k_over_p(&traj).passed);
    }

    #[test]
    fn abs_k_over_p_requires_a_true_bound() {
        let n = 32;
        let traj = run(&cylinder(1.0, n), &config(FlowKind::MeanCurvature, 0.1, n));
        let observed = traj.step_log.iter().map(|r| r.max_h).fold(0.0, f64::max);
        assert!(matches!(
            check_abs_k_over_p(&traj, observed * 0.5),
            Err(MonitorError::HNotBounded { .. })
        ));
        let rec = check_abs_k_over_p(&traj, observed).unwrap();
        assert!(rec.passed);
    }

    #[test]
    fn residuals_vanish_on_the_stationary_cylinder() {
        let n = 48;
        let mut cfg = config(FlowKind::VolumePreserving, 1e-3, n);
        cfg.snapshot_every = 1;
        let traj = run(&cylinder(1.0, n), &cfg);
        let all = [
            EvolvedField::Y,
            EvolvedField::V,
            EvolvedField::K,
            EvolvedField::P,
            EvolvedField::H,
        ];
        for entry in evolution_residuals(&traj, &all).unwrap() {
            assert!(
                entry.max_residual <= 1e-12,
                "{} residual {}",
                entry.field.name(),
                entry.max_residual
            );
        }
    }

    #[test]
    fn residuals_on_mcf_cylinder_are_first_order_in_dt() {
        let n = 32;
        let res_at = |dt: f64| -> f64 {
            let mut cfg = config(FlowKind::MeanCurvature, 4.0 * dt, n);
            cfg.dt_init = dt;
            cfg.cfl = 1.0;
            cfg.snapshot_every = 1;
            let traj = run(&cylinder(1.0, n), &cfg);
            evolution_residuals(&traj, &[EvolvedField::Y]).unwrap()[0].max_residual
        };
        let r1 = res_at(1e-4);
        let r2 = res_at(5e-5);
        let order = (r1 / r2).log2();
        assert!(order >= 0.9, "temporal order {order} ({r1} -> {r2})");
    }

    #[test]
    fn residuals_need_three_snapshots() {
        let n = 32;
        let mut cfg = config(FlowKind::MeanCurvature, 1e-4, n);
        cfg.dt_init = 1e-4; // a single accepted step
        cfg.snapshot_every = 10;
        let traj = run(&cylinder(1.0, n), &cfg);
        assert_eq!(
            evolution_residuals(&traj, &[EvolvedField::Y]).err(),
            Some(MonitorError::InsufficientSnapshots)
        );
    }

    #[test]
    fn residuals_converge_in_space_on_the_perturbed_cylinder() {
        let res_at = |n: usize| -> f64 {
            let profile =
                RadiusProfile::from_fn(unit_interval(), n, |x| 1.0 + 0.1 * (2.0 * PI * x).cos())
                    .unwrap();
            let cfg = FlowConfig {
                kind: FlowKind::MeanCurvature,
                t_end: 2e-8,
                dt_init: 1e-8,
                cfl: 1.0,
                blowup_a2: 1e8,
                snapshot_every: 1,
                n_cells: n,
            };
            let traj = run(&profile, &cfg);
            evolution_residuals(&traj, &[EvolvedField::Y]).unwrap()[0].max_residual
        };
        let r128 = res_at(128);
        let r256 = res_at(256);
        let order = (r128 / r256).log2();
        assert!(order >= 1.9, "spatial order {order} ({r128} -> {r256})");
    }

    #[test]
    fn extension_criterion_is_vacuous_without_a_singularity() {
        let n = 48;
        let traj = run(&cylinder(1.0, n), &config(FlowKind::MeanCurvature, 0.4, n));
        let verdict = extension_criterion(&traj);
        assert!(!verdict.singular);
        assert!(verdict.passed);
        assert!(verdict.as_check().passed);
    }

    #[test]
    fn extension_criterion_flags_clamped_h_blowup() {
        // Fabricated log: |A| runs past the threshold while max |H| stays
        // put, which the extension theorems forbid.
        let mut traj = geometry_only(&cylinder(1.0, 32), FlowKind::MeanCurvature);
        traj.termination = Termination::BlowupDetected;
        let base = traj.step_log[0];
        for i in 1..=5 {
            let mut row = base;
            row.t = i as f64 * 0.01;
            row.max_a = 10f64.powi(i);
            row.max_h = base.max_h; // clamped
            traj.step_log.push(row);
        }
        let verdict = extension_criterion(&traj);
        assert!(verdict.singular);
        assert!(verdict.theorem_violation);
        assert!(!verdict.as_check().passed);
    }

    #[test]
    fn report_covers_the_applicable_checks() {
        let n = 48;
        let traj = run(
            &cylinder(1.0, n),
            &config(FlowKind::VolumePreserving, 0.05, n),
        );
        let rep = report(&traj);
        assert!(rep.all_passed());
        let names: Vec<&str> = rep.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "h_bounds",
                "vy_max_principle",
                "k_over_p_max_principle",
                "abs_k_over_p_bound",
                "extension_criterion"
            ]
        );
        for check in &rep.checks {
            assert!(check.worst_violation <= 1e-10);
        }

        let traj = run(&cylinder(1.0, n), &config(FlowKind::MeanCurvature, 0.05, n));
        let rep = report(&traj);
        assert!(rep.all_passed());
        assert_eq!(rep.checks.len(), 4);
        assert!(rep.constants.c2.is_none());
    }
}
