//! Time evolution of a radius profile by mean curvature flow or
//! volume-preserving mean curvature flow.
//!
//! The stepper is forward Euler under a CFL bound `dt <= cfl * dx^2`
//! (the quasilinear diffusion coefficient is at most one, so `dx^2` is the
//! binding scale). A step whose update would leave the positive cone is
//! rejected and retried with half the step size; the nonlocal average `h`
//! of a volume-preserving run is frozen over each step.

use crate::profile::{trapezoid, GeometricState, RadiusProfile, PINCH_FRACTION};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowKind {
    #[serde(rename = "mcf")]
    MeanCurvature,
    #[serde(rename = "volume")]
    VolumePreserving,
}

impl FlowKind {
    pub fn name(&self) -> &'static str {
        match self {
            FlowKind::MeanCurvature => "mcf",
            FlowKind::VolumePreserving => "volume",
        }
    }
}

pub const DEFAULT_CFL: f64 = 0.25;

/// Default blow-up threshold on `|A|^2`, scaled to the axis length.
pub fn default_blowup_a2(axis_length: f64) -> f64 {
    1e8 / (axis_length * axis_length)
}

/// Run parameters. `dt_init` caps the step; the effective nominal step is
/// `min(dt_init, cfl * dx^2)`.
#[derive(Debug, Clone)]
pub struct FlowConfig {
    pub kind: FlowKind,
    pub t_end: f64,
    pub dt_init: f64,
    pub cfl: f64,
    pub blowup_a2: f64,
    pub snapshot_every: u64,
    pub n_cells: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    ReachedTEnd,
    BlowupDetected,
    PinchDetected,
    DtUnderflow,
}

/// Per-step scalars, one row per accepted step plus the initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub t: f64,
    pub dt: f64,
    /// Area-weighted average mean curvature of the state at `t`.
    pub h: f64,
    pub max_a: f64,
    pub max_h: f64,
    pub min_rho: f64,
    pub max_vy: f64,
    pub max_k_over_p: f64,
    pub volume: f64,
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: u64,
    pub t: f64,
    pub profile: RadiusProfile,
}

#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub kind: FlowKind,
    pub snapshots: Vec<Snapshot>,
    pub step_log: Vec<StepRecord>,
    pub termination: Termination,
}

impl FlowTrajectory {
    pub fn final_time(&self) -> f64 {
        self.step_log.last().map(|r| r.t).unwrap_or(0.0)
    }

    pub fn initial_record(&self) -> &StepRecord {
        &self.step_log[0]
    }
}

/// Area-weighted average of the mean curvature,
/// `h = (integral of H dA) / (integral of dA)`.
///
/// The `2 pi` factors of the area element cancel but are kept for clarity.
pub fn average_mean_curvature(state: &GeometricState) -> f64 {
    let weighted: Vec<f64> = (0..state.n_nodes())
        .map(|j| state.h[j] * 2.0 * std::f64::consts::PI * state.y[j] * state.v[j])
        .collect();
    trapezoid(&weighted, state.dx) / state.surface_area
}

/// Radial speed `d rho / dt` per node.
///
/// Mean curvature flow: `rho'' / (1 + rho'^2) - 1/rho`.
/// Volume-preserving flow adds the nonlocal term `h sqrt(1 + rho'^2)`.
pub fn rhs(profile: &RadiusProfile, kind: FlowKind) -> Vec<f64> {
    let h_bar = match kind {
        FlowKind::MeanCurvature => 0.0,
        FlowKind::VolumePreserving => average_mean_curvature(&profile.geometric_state()),
    };
    rhs_with_average(profile, kind, h_bar)
}

fn rhs_with_average(profile: &RadiusProfile, kind: FlowKind, h_bar: f64) -> Vec<f64> {
    let (rho1, rho2) = profile.derivatives();
    let rho = profile.rho();
    (0..profile.n_nodes())
        .map(|j| {
            let denom = 1.0 + rho1[j] * rho1[j];
            let base = rho2[j] / denom - 1.0 / rho[j];
            match kind {
                FlowKind::MeanCurvature => base,
                FlowKind::VolumePreserving => base + h_bar * denom.sqrt(),
            }
        })
        .collect()
}

/// The forward-Euler update left the positive cone; retry with smaller `dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRejected;

impl std::fmt::Display for StepRejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "step rejected: updated radius is not positive")
    }
}

impl std::error::Error for StepRejected {}

fn apply_update(
    profile: &RadiusProfile,
    speed: &[f64],
    dt: f64,
) -> Result<RadiusProfile, StepRejected> {
    let rho_new: Vec<f64> = profile
        .rho()
        .iter()
        .zip(speed)
        .map(|(r, s)| r + dt * s)
        .collect();
    if rho_new.iter().any(|&r| !r.is_finite() || r <= 0.0) {
        return Err(StepRejected);
    }
    Ok(profile.replace_rho(rho_new))
}

/// One forward-Euler step. The caller is responsible for the stability
/// bound `dt <= cfl * dx^2`; for volume-preserving flow the average `h`
/// is evaluated once from the pre-step state.
pub fn step(
    profile: &RadiusProfile,
    kind: FlowKind,
    dt: f64,
) -> Result<RadiusProfile, StepRejected> {
    apply_update(profile, &rhs(profile, kind), dt)
}

fn record(t: f64, dt: f64, h_bar: f64, state: &GeometricState, min_rho: f64) -> StepRecord {
    StepRecord {
        t,
        dt,
        h: h_bar,
        max_a: state.max_a2().sqrt(),
        max_h: state.max_abs_h(),
        min_rho,
        max_vy: state.max_vy(),
        max_k_over_p: state.max_k_over_p(),
        volume: state.enclosed_volume,
    }
}

/// Integrates until `t_end`, blow-up, pinch, or step-size underflow.
///
/// Every accepted step appends to the log; snapshots are stored at step 0,
/// every `snapshot_every` accepted steps, and at the final state. The run
/// is deterministic for a fixed config.
///
/// Panics if the config violates its invariants (`t_end > 0`, `dt_init > 0`,
/// `cfl` in `(0, 1]`, `snapshot_every >= 1`, matching `n_cells`, and a
/// blow-up threshold above the initial `max |A|^2`).
pub fn run(initial: &RadiusProfile, config: &FlowConfig) -> FlowTrajectory {
    assert!(config.t_end > 0.0, "t_end must be positive");
    assert!(config.dt_init > 0.0, "dt_init must be positive");
    assert!(
        config.cfl > 0.0 && config.cfl <= 1.0,
        "cfl must lie in (0, 1]"
    );
    assert!(config.snapshot_every >= 1, "snapshot_every must be >= 1");
    assert_eq!(
        config.n_cells,
        initial.n_cells(),
        "config n_cells does not match the initial profile"
    );

    let dx = initial.dx();
    let dt_nominal = config.dt_init.min(config.cfl * dx * dx);
    let dt_floor = 1e-14 * config.dt_init;
    let pinch_floor = PINCH_FRACTION * initial.interval().length();

    let mut profile = initial.clone();
    let mut state = profile.geometric_state();
    assert!(
        config.blowup_a2 > state.max_a2(),
        "blow-up threshold must exceed the initial max |A|^2"
    );

    let mut h_bar = average_mean_curvature(&state);
    let mut step_log = vec![record(0.0, 0.0, h_bar, &state, profile.min_rho())];
    let mut snapshots = vec![Snapshot {
        step: 0,
        t: 0.0,
        profile: profile.clone(),
    }];

    let mut t = 0.0;
    let mut step_idx: u64 = 0;
    let mut termination = Termination::ReachedTEnd;

    while t < config.t_end {
        let speed = rhs_with_average(
            &profile,
            config.kind,
            match config.kind {
                FlowKind::MeanCurvature => 0.0,
                FlowKind::VolumePreserving => h_bar,
            },
        );

        let mut dt = dt_nominal.min(config.t_end - t);
        let next = loop {
            match apply_update(&profile, &speed, dt) {
                Ok(p) => break Some(p),
                Err(StepRejected) => {
                    dt *= 0.5;
                    if dt < dt_floor {
                        break None;
                    }
                }
            }
        };
        let Some(next) = next else {
            // The step size collapsed while chasing positivity: axis contact.
            termination = Termination::PinchDetected;
            break;
        };
        if t + dt == t {
            termination = Termination::DtUnderflow;
            break;
        }

        t += dt;
        step_idx += 1;
        profile = next;
        state = profile.geometric_state();
        h_bar = average_mean_curvature(&state);
        step_log.push(record(t, dt, h_bar, &state, profile.min_rho()));
        if step_idx.is_multiple_of(config.snapshot_every) {
            snapshots.push(Snapshot {
                step: step_idx,
                t,
                profile: profile.clone(),
            });
        }

        if state.max_a2() >= config.blowup_a2 {
            termination = Termination::BlowupDetected;
            break;
        }
        if profile.min_rho() <= pinch_floor {
            termination = Termination::PinchDetected;
            break;
        }
    }

    if snapshots.last().map(|s| s.step) != Some(step_idx) {
        snapshots.push(Snapshot {
            step: step_idx,
            t,
            profile: profile.clone(),
        });
    }

    FlowTrajectory {
        kind: config.kind,
        snapshots,
        step_log,
        termination,
    }
}
