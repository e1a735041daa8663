//! Initial-data presets for batch runs.
//!
//! The cosine presets use integer mode numbers over the interval, so their
//! end slopes vanish and the discrete Neumann condition holds exactly. A
//! catenoid segment does not meet the planes at right angles; it is
//! geometry-only and rejected by the flow driver.

use crate::profile::{AxisInterval, ProfileError, RadiusProfile};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScenarioKind {
    Cylinder {
        r: f64,
    },
    /// `r + eps cos(m pi (x - a)/(b - a))`.
    PerturbedCylinder {
        r: f64,
        eps: f64,
        m: u32,
    },
    /// `r0 + amp cos(2 pi (x - a)/(b - a))`: a throat at the midpoint.
    Neck {
        r0: f64,
        amp: f64,
    },
    /// `c cosh((x - x0)/c)`; geometry-only.
    CatenoidSegment {
        c: f64,
        x0: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub interval: AxisInterval,
    pub n_cells: usize,
}

impl Scenario {
    pub fn initial_profile(&self) -> Result<RadiusProfile, ProfileError> {
        let n = self.n_cells;
        match self.kind {
            ScenarioKind::Cylinder { r } => RadiusProfile::from_fn(self.interval, n, |_| r),
            ScenarioKind::PerturbedCylinder { r, eps, m } => {
                // Phase from the node index keeps the integer-mode endpoint
                // values exact.
                let rho = (0..=n)
                    .map(|j| r + eps * (m as f64 * PI * j as f64 / n as f64).cos())
                    .collect();
                RadiusProfile::new(self.interval, n, rho)
            }
            ScenarioKind::Neck { r0, amp } => {
                let rho = (0..=n)
                    .map(|j| r0 + amp * (2.0 * PI * j as f64 / n as f64).cos())
                    .collect();
                RadiusProfile::new(self.interval, n, rho)
            }
            ScenarioKind::CatenoidSegment { c, x0 } => {
                RadiusProfile::from_fn(self.interval, n, |x| c * ((x - x0) / c).cosh())
            }
        }
    }

    /// Whether the preset is admissible initial data for the flow driver.
    pub fn flowable(&self) -> bool {
        !matches!(self.kind, ScenarioKind::CatenoidSegment { .. })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ScenarioKind::Cylinder { .. } => "cylinder",
            ScenarioKind::PerturbedCylinder { .. } => "perturbed_cylinder",
            ScenarioKind::Neck { .. } => "neck",
            ScenarioKind::CatenoidSegment { .. } => "catenoid_segment",
        }
    }
}
