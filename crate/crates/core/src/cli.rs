//! Batch front end: config parsing, run orchestration, and the monitor /
//! rescale / fit / derive commands behind the binary.
//!
//! Exit codes: 0 on clean termination, 1 when a check or fit fails,
//! 2 for config errors, 3 for IO errors.

use crate::flow::{self, FlowConfig, FlowKind, FlowTrajectory, Termination};
use crate::io::{
    self, RescaledSnapshotFile, SnapshotFile, FIT_REPORT_FILE, MANIFEST_FILE, MONITOR_REPORT_FILE,
    STEP_LOG_FILE,
};
use crate::monitors;
use crate::profile::{AxisInterval, RadiusProfile};
use crate::rescale;
use crate::scenario::{Scenario, ScenarioKind};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("one or more checks failed")]
    ChecksFailed,
    #[error("{0}")]
    Analysis(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed | CliError::Analysis(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn io_err(context: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{context}: {err}"))
}

/// Flat run configuration, one JSON object per run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// One of `cylinder`, `perturbed_cylinder`, `neck`, `catenoid_segment`.
    pub scenario: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amp: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default = "default_a")]
    pub a: f64,
    #[serde(default = "default_b")]
    pub b: f64,
    pub n_cells: usize,
    pub kind: FlowKind,
    pub t_end: f64,
    pub dt_init: f64,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    /// Defaults to `1e8 / (b - a)^2` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowup_a2: Option<f64>,
    #[serde(default = "default_snapshot_every")]
    pub snapshot_every: u64,
    pub out_dir: String,
}

fn default_a() -> f64 {
    0.0
}

fn default_b() -> f64 {
    1.0
}

fn default_cfl() -> f64 {
    flow::DEFAULT_CFL
}

fn default_snapshot_every() -> u64 {
    100
}

impl RunConfig {
    fn require(opt: Option<f64>, field: &str, scenario: &str) -> Result<f64, CliError> {
        opt.ok_or_else(|| {
            CliError::Config(format!("scenario {scenario:?} requires field {field:?}"))
        })
    }

    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let interval =
            AxisInterval::new(self.a, self.b).map_err(|e| CliError::Config(e.to_string()))?;
        let kind = match self.scenario.as_str() {
            "cylinder" => ScenarioKind::Cylinder {
                r: Self::require(self.r, "r", "cylinder")?,
            },
            "perturbed_cylinder" => ScenarioKind::PerturbedCylinder {
                r: Self::require(self.r, "r", "perturbed_cylinder")?,
                eps: Self::require(self.eps, "eps", "perturbed_cylinder")?,
                m: self.m.ok_or_else(|| {
                    CliError::Config("scenario \"perturbed_cylinder\" requires field \"m\"".into())
                })?,
            },
            "neck" => ScenarioKind::Neck {
                r0: Self::require(self.r0, "r0", "neck")?,
                amp: Self::require(self.amp, "amp", "neck")?,
            },
            "catenoid_segment" => ScenarioKind::CatenoidSegment {
                c: Self::require(self.c, "c", "catenoid_segment")?,
                x0: Self::require(self.x0, "x0", "catenoid_segment")?,
            },
            other => {
                return Err(CliError::Config(format!("unknown scenario {other:?}")));
            }
        };
        Ok(Scenario {
            kind,
            interval,
            n_cells: self.n_cells,
        })
    }

    /// Validates everything needed before any output is produced; the
    /// returned config has all defaults resolved.
    pub fn validated(&self) -> Result<(RadiusProfile, FlowConfig, RunConfig), CliError> {
        let scenario = self.scenario()?;
        if !scenario.flowable() {
            return Err(CliError::Config(format!(
                "scenario {:?} is geometry-only and cannot be flowed",
                self.scenario
            )));
        }
        if !self.t_end.is_finite() || self.t_end <= 0.0 {
            return Err(CliError::Config("t_end must be positive".into()));
        }
        if !self.dt_init.is_finite() || self.dt_init <= 0.0 {
            return Err(CliError::Config("dt_init must be positive".into()));
        }
        if !self.cfl.is_finite() || self.cfl <= 0.0 || self.cfl > 1.0 {
            return Err(CliError::Config("cfl must lie in (0, 1]".into()));
        }
        if self.snapshot_every == 0 {
            return Err(CliError::Config("snapshot_every must be >= 1".into()));
        }
        let initial = scenario
            .initial_profile()
            .map_err(|e| CliError::Config(format!("bad initial profile: {e}")))?;
        let blowup_a2 = self
            .blowup_a2
            .unwrap_or_else(|| flow::default_blowup_a2(scenario.interval.length()));
        let init_max_a2 = initial.geometric_state().max_a2();
        if blowup_a2 <= init_max_a2 {
            return Err(CliError::Config(format!(
                "blowup_a2 {blowup_a2:e} does not exceed the initial max |A|^2 {init_max_a2:e}"
            )));
        }
        let flow_config = FlowConfig {
            kind: self.kind,
            t_end: self.t_end,
            dt_init: self.dt_init,
            cfl: self.cfl,
            blowup_a2,
            snapshot_every: self.snapshot_every,
            n_cells: self.n_cells,
        };
        let mut resolved = self.clone();
        resolved.blowup_a2 = Some(blowup_a2);
        Ok((initial, flow_config, resolved))
    }
}

/// Run provenance: the resolved config plus the outcome. Re-running the
/// echoed config reproduces the step log byte for byte.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    pub termination: Termination,
    pub steps: u64,
    pub final_t: f64,
    pub snapshot_count: usize,
    pub wall_time_s: f64,
}

pub fn cmd_run(config_path: &Path) -> Result<(), CliError> {
    let body = std::fs::read_to_string(config_path)
        .map_err(|e| io_err(&format!("reading {}", config_path.display()), e))?;
    let config: RunConfig =
        serde_json::from_str(&body).map_err(|e| CliError::Config(e.to_string()))?;
    let (initial, flow_config, resolved) = config.validated()?;

    let started = Instant::now();
    let trajectory = flow::run(&initial, &flow_config);
    let wall_time_s = started.elapsed().as_secs_f64();

    let out_dir = Path::new(&resolved.out_dir).to_path_buf();
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| io_err(&format!("creating {}", out_dir.display()), e))?;
    for snapshot in &trajectory.snapshots {
        io::write_snapshot(&out_dir, snapshot).map_err(|e| io_err("writing snapshot", e))?;
    }
    io::write_step_log(&out_dir.join(STEP_LOG_FILE), &trajectory.step_log)
        .map_err(|e| io_err("writing step log", e))?;
    let manifest = Manifest {
        config: resolved,
        termination: trajectory.termination,
        steps: trajectory.step_log.len() as u64 - 1,
        final_t: trajectory.final_time(),
        snapshot_count: trajectory.snapshots.len(),
        wall_time_s,
    };
    let body =
        serde_json::to_string_pretty(&manifest).map_err(|e| io_err("encoding manifest", e))?;
    std::fs::write(out_dir.join(MANIFEST_FILE), body).map_err(|e| io_err("writing manifest", e))?;

    println!(
        "run finished: termination={:?} steps={} t={:.6} ({:.2} s) -> {}",
        manifest.termination,
        manifest.steps,
        manifest.final_t,
        wall_time_s,
        out_dir.display()
    );
    Ok(())
}

pub fn load_trajectory(dir: &Path) -> Result<(FlowTrajectory, Manifest), CliError> {
    let manifest_path = dir.join(MANIFEST_FILE);
    let body = std::fs::read_to_string(&manifest_path)
        .map_err(|e| io_err(&format!("reading {}", manifest_path.display()), e))?;
    let manifest: Manifest = serde_json::from_str(&body)
        .map_err(|e| io_err(&format!("parsing {}", manifest_path.display()), e))?;
    let step_log =
        io::read_step_log(&dir.join(STEP_LOG_FILE)).map_err(|e| io_err("reading step log", e))?;
    let snapshots = io::load_snapshots(dir).map_err(|e| io_err("reading snapshots", e))?;
    Ok((
        FlowTrajectory {
            kind: manifest.config.kind,
            snapshots,
            step_log,
            termination: manifest.termination,
        },
        manifest,
    ))
}

pub fn cmd_monitor(dir: &Path) -> Result<(), CliError> {
    let (trajectory, _) = load_trajectory(dir)?;
    let report = monitors::report(&trajectory);
    let body =
        serde_json::to_string_pretty(&report.checks).map_err(|e| io_err("encoding report", e))?;
    std::fs::write(dir.join(MONITOR_REPORT_FILE), body).map_err(|e| io_err("writing report", e))?;

    for check in &report.checks {
        println!(
            "{:<28} {}  worst={:+.3e} tol={:.3e} at t={:.6}",
            check.name,
            if check.passed { "PASS" } else { "FAIL" },
            check.worst_violation,
            check.tolerance,
            check.at_time,
        );
    }
    let c = &report.constants;
    println!(
        "constants: c0={:.6e} c1={:.6e} c2={} c3={} c4={:.6e}",
        c.c0,
        c.c1,
        c.c2.map_or("-".to_string(), |v| format!("{v:.6e}")),
        c.c3.map_or("-".to_string(), |v| format!("{v:.6e}")),
        c.c4,
    );
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}

pub fn cmd_rescale(
    dir: &Path,
    deadline: Option<f64>,
    eps1: f64,
    eps2: f64,
) -> Result<(), CliError> {
    let (trajectory, _) = load_trajectory(dir)?;
    let deadline =
        deadline.unwrap_or_else(|| trajectory.snapshots.last().map(|s| s.t).unwrap_or(0.0));
    let event = rescale::max_curvature_event(&trajectory, deadline)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let out_dir = dir.join("rescaled");
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| io_err(&format!("creating {}", out_dir.display()), e))?;

    let mut written = 0usize;
    let mut event_rescaled = None;
    for snapshot in trajectory.snapshots.iter().filter(|s| s.t <= event.t_i) {
        let rp = rescale::rescale(snapshot.t, &snapshot.profile, &event, trajectory.kind);
        let file = RescaledSnapshotFile {
            a: rp.x_tilde[0],
            b: *rp.x_tilde.last().unwrap(),
            n_cells: rp.rho_tilde.len() - 1,
            rho: rp.rho_tilde.clone(),
            t: snapshot.t,
            alpha: rp.alpha,
            tau: rp.tau,
        };
        let body = serde_json::to_string(&file).map_err(|e| io_err("encoding snapshot", e))?;
        std::fs::write(
            out_dir.join(format!("rescaled_{:08}.json", snapshot.step)),
            body,
        )
        .map_err(|e| io_err("writing rescaled snapshot", e))?;
        written += 1;
        if snapshot.t == event.t_i {
            event_rescaled = Some(rp);
        }
    }
    let event_rescaled = event_rescaled.expect("event snapshot lies within the rescaled window");

    // Constants in the roles they play in the rescaled bounds.
    let c4 = monitors::vy_bound_constant(&trajectory);
    let c_bound = trajectory
        .step_log
        .iter()
        .map(|r| r.max_h)
        .fold(0.0, f64::max);
    let c0 = 1.0 + c_bound * c4;
    let c5_bound = (1.0 + c0 * c0).sqrt();
    let height_bound = rescale::check_rescaled_height_bound(&event_rescaled, c5_bound);

    let fit = rescale::catenoid_fit(&event_rescaled);
    let mean_rho =
        event_rescaled.rho_tilde.iter().sum::<f64>() / event_rescaled.rho_tilde.len() as f64;
    let (fit_json, fit_quality, contra_width, contra_note) = match &fit {
        Ok(f) => {
            let quality = if f.rms_residual <= 1e-2 * mean_rho {
                "good"
            } else {
                "poor"
            };
            match rescale::contradiction_diagnostic(f, c4, event.alpha, eps1, eps2) {
                Ok(w) => (serde_json::to_value(f).unwrap(), quality, Some(w), None),
                Err(e) => (
                    serde_json::to_value(f).unwrap(),
                    quality,
                    None,
                    Some(e.to_string()),
                ),
            }
        }
        Err(_) => (serde_json::Value::Null, "diverged", None, None),
    };
    let report = serde_json::json!({
        "event": event,
        "constants": { "c4": c4, "c_bound": c_bound, "c0": c0, "c5_bound": c5_bound },
        "height_bound": height_bound,
        "fit": fit_json,
        "fit_quality": fit_quality,
        "contradiction_half_width": contra_width,
        "contradiction_note": contra_note,
        "rescaled_snapshots": written,
    });
    let body =
        serde_json::to_string_pretty(&report).map_err(|e| io_err("encoding fit report", e))?;
    std::fs::write(out_dir.join(FIT_REPORT_FILE), body)
        .map_err(|e| io_err("writing fit report", e))?;

    println!(
        "rescaled {written} snapshots around t_i={:.6} alpha={:.6e} node={} (fit: {fit_quality}) -> {}",
        event.t_i,
        event.alpha,
        event.node_index,
        out_dir.display()
    );
    if let Err(e) = fit {
        println!("catenoid fit did not converge: {e}");
    }
    Ok(())
}

/// Accepts both plain and rescaled snapshot files.
#[derive(Debug, Deserialize)]
struct FitInput {
    a: f64,
    b: f64,
    n_cells: usize,
    rho: Vec<f64>,
    #[serde(default)]
    #[allow(dead_code)]
    t: f64,
    #[serde(default)]
    #[allow(dead_code)]
    alpha: Option<f64>,
    #[serde(default)]
    #[allow(dead_code)]
    tau: Option<f64>,
}

pub fn cmd_fit_catenoid(path: &Path) -> Result<(), CliError> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| io_err(&format!("reading {}", path.display()), e))?;
    let input: FitInput = serde_json::from_str(&body)
        .map_err(|e| io_err(&format!("parsing {}", path.display()), e))?;
    let dx = (input.b - input.a) / input.n_cells as f64;
    let xs: Vec<f64> = (0..=input.n_cells)
        .map(|j| input.a + j as f64 * dx)
        .collect();
    let fit = rescale::fit_catenoid_samples(&xs, &input.rho)
        .map_err(|e| CliError::Analysis(format!("catenoid fit failed: {e}")))?;
    println!("{}", serde_json::to_string_pretty(&fit).unwrap());
    Ok(())
}

pub fn cmd_derive(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let file: SnapshotFile = io::read_snapshot_file(path)
        .map_err(|e| io_err(&format!("reading {}", path.display()), e))?;
    let (t, profile) = file
        .to_profile()
        .map_err(|e| io_err(&format!("parsing {}", path.display()), e))?;
    let state = profile.geometric_state();
    let dump = serde_json::json!({
        "t": t,
        "x": profile.xs(),
        "y": state.y,
        "v": state.v,
        "p": state.p,
        "k": state.k,
        "q": state.q,
        "H": state.h,
        "A2": state.a2,
        "surface_area": state.surface_area,
        "enclosed_volume": state.enclosed_volume,
    });
    let body = serde_json::to_string_pretty(&dump).unwrap();
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| io_err(&format!("writing {}", path.display()), e))?,
        None => println!("{body}"),
    }
    Ok(())
}
