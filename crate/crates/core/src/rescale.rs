//! Blow-up rescaling around the curvature-maximising spacetime event,
//! rescaled-bound checks, catenoid fitting, and the quantitative
//! contradiction scale for bounded-H blow-up candidates.
//!
//! Zooming by `alpha = max |A|` normalises the rescaled curvature to at
//! most one, with equality at the event itself; if the rescaled profiles
//! approach a catenoid while `H` stays bounded, the `vy` bound of the
//! original flow fails beyond a computable axis distance.

use crate::flow::{average_mean_curvature, FlowKind, FlowTrajectory};
use crate::monitors::{CheckRecord, REL_SLACK};
use crate::profile::RadiusProfile;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RescaleError {
    #[error("no snapshot at or before the deadline")]
    EmptyWindow,
    #[error("catenoid fit left the search box")]
    FitDiverged,
    #[error("fit needs at least 8 nodes")]
    TooFewNodes,
    #[error("contradiction scale undefined: log argument is not above one")]
    NonPositiveArgument,
}

/// The curvature-maximising spacetime point of a trajectory window.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RescaleEvent {
    /// `max |A|` over the window; the zoom factor.
    pub alpha: f64,
    /// Latest time attaining the maximum.
    pub t_i: f64,
    /// Grid node attaining the maximum (leftmost on ties).
    pub node_index: usize,
    /// Axis coordinate of that node.
    pub x1_i: f64,
    /// Index into the trajectory's snapshot list.
    pub snapshot_index: usize,
}

/// A snapshot zoomed by `alpha` about the event's axis coordinate.
/// Lengths scale by `alpha`, curvatures by `1/alpha`, time by `alpha^2`.
#[derive(Debug, Clone)]
pub struct RescaledProfile {
    pub x_tilde: Vec<f64>,
    pub rho_tilde: Vec<f64>,
    pub tau: f64,
    pub alpha: f64,
    /// Rescaled mean curvature per node.
    pub h_tilde: Vec<f64>,
    /// Rescaled second-fundamental-form norm per node.
    pub a_tilde: Vec<f64>,
    /// Rescaled average mean curvature; volume-preserving runs only.
    pub h_avg_tilde: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CatenoidFit {
    /// Catenoid parameter of `rho = c5 cosh((x - x0)/c5)`.
    pub c5: f64,
    /// Throat location in the fitted coordinates.
    pub x0: f64,
    pub rms_residual: f64,
}

/// Scans snapshots with `t <= deadline` for the largest `|A|`. Among equal
/// maxima the latest time wins, then the smallest axis coordinate.
pub fn max_curvature_event(
    traj: &FlowTrajectory,
    deadline: f64,
) -> Result<RescaleEvent, RescaleError> {
    let mut best: Option<(f64, usize, usize, f64)> = None;
    for (si, snap) in traj.snapshots.iter().enumerate() {
        if snap.t > deadline {
            continue;
        }
        let state = snap.profile.geometric_state();
        let mut node = 0;
        let mut a2_max = state.a2[0];
        for (j, &a2) in state.a2.iter().enumerate().skip(1) {
            if a2 > a2_max {
                a2_max = a2;
                node = j;
            }
        }
        let replace = match best {
            None => true,
            Some((best_a2, ..)) => a2_max >= best_a2,
        };
        if replace {
            best = Some((a2_max, si, node, snap.t));
        }
    }
    let (a2, snapshot_index, node_index, t_i) = best.ok_or(RescaleError::EmptyWindow)?;
    Ok(RescaleEvent {
        alpha: a2.sqrt(),
        t_i,
        node_index,
        x1_i: traj.snapshots[snapshot_index].profile.x(node_index),
        snapshot_index,
    })
}

/// Rescales one snapshot about the event:
/// `x~ = alpha (x - x1_i)`, `rho~ = alpha rho`, `tau = alpha^2 (t - t_i)`,
/// and curvatures divided by `alpha`.
pub fn rescale(
    t: f64,
    profile: &RadiusProfile,
    event: &RescaleEvent,
    kind: FlowKind,
) -> RescaledProfile {
    let state = profile.geometric_state();
    let alpha = event.alpha;
    RescaledProfile {
        x_tilde: profile
            .xs()
            .iter()
            .map(|x| alpha * (x - event.x1_i))
            .collect(),
        rho_tilde: profile.rho().iter().map(|r| alpha * r).collect(),
        tau: alpha * alpha * (t - event.t_i),
        alpha,
        h_tilde: state.h.iter().map(|h| h / alpha).collect(),
        a_tilde: state.a2.iter().map(|a2| a2.sqrt() / alpha).collect(),
        h_avg_tilde: match kind {
            FlowKind::VolumePreserving => Some(average_mean_curvature(&state) / alpha),
            FlowKind::MeanCurvature => None,
        },
    }
}

/// Height-weighted curvature bound on a rescaled profile:
/// `max |A~| rho~ <= c5`, with `c5 = sqrt(1 + c0^2)` supplied by the caller
/// from the `|k|/p` bound constant.
pub fn check_rescaled_height_bound(rp: &RescaledProfile, c5: f64) -> CheckRecord {
    let mut worst = f64::NEG_INFINITY;
    for j in 0..rp.rho_tilde.len() {
        worst = worst.max(rp.a_tilde[j] * rp.rho_tilde[j] - c5);
    }
    CheckRecord {
        name: "rescaled_height_bound".to_string(),
        worst_violation: worst,
        at_time: rp.tau,
        passed: worst <= REL_SLACK * c5,
        tolerance: REL_SLACK * c5,
    }
}

const FIT_C_MIN: f64 = 1e-3;
const FIT_C_MAX: f64 = 1e3;

fn fit_rms(x: &[f64], rho: &[f64], c: f64, x0: f64) -> f64 {
    let mut acc = 0.0;
    for (xi, ri) in x.iter().zip(rho) {
        let d = c * ((xi - x0) / c).cosh() - ri;
        acc += d * d;
    }
    let rms = (acc / x.len() as f64).sqrt();
    if rms.is_finite() {
        rms
    } else {
        f64::INFINITY
    }
}

/// Least-squares catenoid fit `rho ~ c cosh((x - x0)/c)` over raw samples:
/// a coarse grid search over the box `[1e-3, 1e3] x [min x, max x]`
/// followed by damped Gauss-Newton refinement. Deterministic.
pub fn fit_catenoid_samples(x: &[f64], rho: &[f64]) -> Result<CatenoidFit, RescaleError> {
    assert_eq!(x.len(), rho.len());
    if x.len() < 8 {
        return Err(RescaleError::TooFewNodes);
    }
    let x_min = x.iter().copied().fold(f64::INFINITY, f64::min);
    let x_max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    // Coarse pass: 20 c-values per decade, 65 throat positions.
    let mut best = (f64::INFINITY, 1.0, 0.5 * (x_min + x_max));
    let decades = (FIT_C_MAX / FIT_C_MIN).log10();
    let n_c = (decades * 20.0).round() as usize;
    for ic in 0..=n_c {
        let c = FIT_C_MIN * 10f64.powf(decades * ic as f64 / n_c as f64);
        for ix in 0..=64 {
            let x0 = x_min + (x_max - x_min) * ix as f64 / 64.0;
            let r = fit_rms(x, rho, c, x0);
            if r < best.0 {
                best = (r, c, x0);
            }
        }
    }

    let (mut rms, mut c, mut x0) = best;
    let mut lambda = 1e-3;
    for _ in 0..200 {
        // Normal equations for the residual r_i = c cosh(u) - rho_i with
        // dr/dc = cosh(u) - u sinh(u), dr/dx0 = -sinh(u), u = (x - x0)/c.
        let mut jtj = [[0.0f64; 2]; 2];
        let mut jtr = [0.0f64; 2];
        for (xi, ri) in x.iter().zip(rho) {
            let u = (xi - x0) / c;
            let (sh, ch) = (u.sinh(), u.cosh());
            let res = c * ch - ri;
            let jc = ch - u * sh;
            let jx = -sh;
            jtj[0][0] += jc * jc;
            jtj[0][1] += jc * jx;
            jtj[1][1] += jx * jx;
            jtr[0] += jc * res;
            jtr[1] += jx * res;
        }
        jtj[1][0] = jtj[0][1];
        let a00 = jtj[0][0] * (1.0 + lambda);
        let a11 = jtj[1][1] * (1.0 + lambda);
        let det = a00 * a11 - jtj[0][1] * jtj[1][0];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dc = -(a11 * jtr[0] - jtj[0][1] * jtr[1]) / det;
        let dx0 = -(a00 * jtr[1] - jtj[1][0] * jtr[0]) / det;
        let (c_new, x0_new) = (c + dc, x0 + dx0);
        if !(FIT_C_MIN..=FIT_C_MAX).contains(&c_new) || !(x_min..=x_max).contains(&x0_new) {
            return Err(RescaleError::FitDiverged);
        }
        let rms_new = fit_rms(x, rho, c_new, x0_new);
        if rms_new < rms {
            let step = dc.abs().max(dx0.abs());
            c = c_new;
            x0 = x0_new;
            rms = rms_new;
            lambda = (lambda / 3.0).max(1e-12);
            if step <= 1e-13 * c.abs().max(1.0) {
                break;
            }
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    Ok(CatenoidFit {
        c5: c,
        x0,
        rms_residual: rms,
    })
}

/// Catenoid fit of a rescaled profile.
pub fn catenoid_fit(rp: &RescaledProfile) -> Result<CatenoidFit, RescaleError> {
    fit_catenoid_samples(&rp.x_tilde, &rp.rho_tilde)
}

/// Rescaled axis half-width beyond which the catenoid's `vy` proxy
/// `(c5/(4 alpha_i))(exp(x/(2 c5)) + 1) - eps1/alpha_i` exceeds `c4`:
/// `x* = 2 c5 log((4 alpha_i / c5)(c4 + eps1/alpha_i) - 1) + eps2`.
///
/// Past that distance the original flow's height-gradient bound fails, so a
/// bounded-H blow-up limiting to this catenoid is contradictory.
pub fn contradiction_diagnostic(
    fit: &CatenoidFit,
    c4: f64,
    alpha_i: f64,
    eps1: f64,
    eps2: f64,
) -> Result<f64, RescaleError> {
    let arg = (4.0 * alpha_i / fit.c5) * (c4 + eps1 / alpha_i) - 1.0;
    if arg <= 1.0 {
        return Err(RescaleError::NonPositiveArgument);
    }
    Ok(2.0 * fit.c5 * arg.ln() + eps2)
}
