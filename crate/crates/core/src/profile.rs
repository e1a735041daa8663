//! Radius-profile representation of an axially symmetric surface and the
//! geometric quantities derived from it.
//!
//! The surface is generated by rotating the graph of a positive radius
//! function over an axis interval `[a, b]` about the axis. Both ends carry
//! Neumann data (`rho' = 0`), realised discretely by mirror ghost nodes:
//! `rho[-1] = rho[1]` and `rho[n+1] = rho[n-1]`.

use thiserror::Error;

/// Minimum grid resolution for a valid profile.
pub const MIN_CELLS: usize = 16;

/// Radii at or below this fraction of the axis length count as axis contact.
pub const PINCH_FRACTION: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum ProfileError {
    #[error("axis interval requires a < b, got [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
    #[error("profile needs at least {MIN_CELLS} cells, got {0}")]
    TooFewCells(usize),
    #[error("expected {expected} radius samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("radius at node {0} is not finite")]
    NonFinite(usize),
    #[error("pinch: radius {rho:e} at node {node} is not positive")]
    Pinch { node: usize, rho: f64 },
}

/// Bounded axis interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisInterval {
    a: f64,
    b: f64,
}

impl AxisInterval {
    pub fn new(a: f64, b: f64) -> Result<Self, ProfileError> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(ProfileError::BadInterval { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }
}

/// Discrete generating curve: radius samples on the uniform grid
/// `x_j = a + j (b - a) / n_cells`, `j = 0..=n_cells`.
///
/// All radii are strictly positive; a non-positive radius is a pinch event,
/// not a valid profile, and is rejected at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusProfile {
    interval: AxisInterval,
    n_cells: usize,
    rho: Vec<f64>,
}

impl RadiusProfile {
    pub fn new(
        interval: AxisInterval,
        n_cells: usize,
        rho: Vec<f64>,
    ) -> Result<Self, ProfileError> {
        if n_cells < MIN_CELLS {
            return Err(ProfileError::TooFewCells(n_cells));
        }
        if rho.len() != n_cells + 1 {
            return Err(ProfileError::LengthMismatch {
                expected: n_cells + 1,
                got: rho.len(),
            });
        }
        for (j, &r) in rho.iter().enumerate() {
            if !r.is_finite() {
                return Err(ProfileError::NonFinite(j));
            }
            if r <= 0.0 {
                return Err(ProfileError::Pinch { node: j, rho: r });
            }
        }
        Ok(Self {
            interval,
            n_cells,
            rho,
        })
    }

    /// Samples `f` at the grid nodes.
    pub fn from_fn(
        interval: AxisInterval,
        n_cells: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, ProfileError> {
        let dx = interval.length() / n_cells as f64;
        let rho = (0..=n_cells)
            .map(|j| f(interval.a + j as f64 * dx))
            .collect();
        Self::new(interval, n_cells, rho)
    }

    /// Same grid, new radii. Caller guarantees positivity.
    pub(crate) fn replace_rho(&self, rho: Vec<f64>) -> Self {
        debug_assert_eq!(rho.len(), self.n_cells + 1);
        debug_assert!(rho.iter().all(|&r| r > 0.0 && r.is_finite()));
        Self {
            interval: self.interval,
            n_cells: self.n_cells,
            rho,
        }
    }

    pub fn interval(&self) -> AxisInterval {
        self.interval
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn n_nodes(&self) -> usize {
        self.n_cells + 1
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn dx(&self) -> f64 {
        self.interval.length() / self.n_cells as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.interval.a + j as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..=self.n_cells).map(|j| self.x(j)).collect()
    }

    pub fn min_rho(&self) -> f64 {
        self.rho.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Axis contact per the pinch threshold.
    pub fn is_pinched(&self) -> bool {
        self.min_rho() <= PINCH_FRACTION * self.interval.length()
    }

    /// Mirror ghost lookup, valid for `-1 <= i <= n_cells + 1`.
    #[inline]
    fn ghost(&self, i: isize) -> f64 {
        let n = self.n_cells as isize;
        let j = if i < 0 {
            -i
        } else if i > n {
            2 * n - i
        } else {
            i
        };
        self.rho[j as usize]
    }

    /// Second-order central `rho'` and `rho''` at every node.
    ///
    /// The mirror ghosts make `rho'` exactly zero at both ends.
    pub fn derivatives(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n_cells;
        let dx = self.dx();
        let dx2 = dx * dx;
        let mut rho1 = Vec::with_capacity(n + 1);
        let mut rho2 = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let jm = self.ghost(j as isize - 1);
            let jp = self.ghost(j as isize + 1);
            let jc = self.rho[j];
            rho1.push((jp - jm) / (2.0 * dx));
            rho2.push((jp - 2.0 * jc + jm) / dx2);
        }
        (rho1, rho2)
    }

    /// All pointwise and integral quantities of the surface of revolution.
    pub fn geometric_state(&self) -> GeometricState {
        let n1 = self.n_nodes();
        let dx = self.dx();
        let (rho1, rho2) = self.derivatives();

        let mut v = Vec::with_capacity(n1);
        let mut p = Vec::with_capacity(n1);
        let mut k = Vec::with_capacity(n1);
        let mut q = Vec::with_capacity(n1);
        let mut h = Vec::with_capacity(n1);
        let mut a2 = Vec::with_capacity(n1);
        for j in 0..n1 {
            let rj = self.rho[j];
            let vj = (1.0 + rho1[j] * rho1[j]).sqrt();
            let pj = 1.0 / (rj * vj);
            let kj = -rho2[j] / (vj * vj * vj);
            v.push(vj);
            p.push(pj);
            k.push(kj);
            q.push(-rho1[j] * pj);
            h.push(kj + pj);
            a2.push(kj * kj + pj * pj);
        }

        let area_element: Vec<f64> = (0..n1)
            .map(|j| 2.0 * std::f64::consts::PI * self.rho[j] * v[j])
            .collect();
        let rho_sq: Vec<f64> = self.rho.iter().map(|r| r * r).collect();
        let surface_area = trapezoid(&area_element, dx);
        let enclosed_volume = std::f64::consts::PI * trapezoid(&rho_sq, dx);

        let state = GeometricState {
            y: self.rho.clone(),
            v,
            p,
            k,
            q,
            h,
            a2,
            surface_area,
            enclosed_volume,
            dx,
        };
        debug_assert!(state.identity_defect() <= 1e-12);
        state
    }

    /// Laplace-Beltrami operator applied to an axially symmetric scalar `f`
    /// sampled at the nodes: `(1/(rho v)) d/dx( rho f' / v )`, in
    /// conservative flux form with the same mirror ghosts.
    ///
    /// Exactly zero for constant `f`.
    pub fn surface_laplacian(&self, f: &[f64]) -> Vec<f64> {
        assert_eq!(f.len(), self.n_nodes(), "f must be sampled at the nodes");
        let n = self.n_cells as isize;
        let dx = self.dx();

        let fg = |i: isize| -> f64 {
            let j = if i < 0 {
                -i
            } else if i > n {
                2 * n - i
            } else {
                i
            };
            f[j as usize]
        };
        // Flux rho f' / v at the midpoint between nodes i and i+1.
        let flux = |i: isize| -> f64 {
            let rho_mid = 0.5 * (self.ghost(i) + self.ghost(i + 1));
            let slope = (self.ghost(i + 1) - self.ghost(i)) / dx;
            let v_mid = (1.0 + slope * slope).sqrt();
            let df = (fg(i + 1) - fg(i)) / dx;
            rho_mid * df / v_mid
        };

        let (rho1, _) = self.derivatives();
        (0..=n)
            .map(|j| {
                let vj = (1.0 + rho1[j as usize] * rho1[j as usize]).sqrt();
                (flux(j) - flux(j - 1)) / (dx * self.rho[j as usize] * vj)
            })
            .collect()
    }
}

/// Pointwise geometry of the surface of revolution plus its area and
/// enclosed volume (composite trapezoid, summed left to right).
///
/// `h` holds the pointwise mean curvature `k + p`; its area-weighted
/// average is [`crate::flow::average_mean_curvature`].
#[derive(Debug, Clone)]
pub struct GeometricState {
    /// Height above the axis; equals the radius samples.
    pub y: Vec<f64>,
    /// Gradient function `sqrt(1 + rho'^2) >= 1`.
    pub v: Vec<f64>,
    /// Rotational principal curvature `1 / (rho v) > 0`.
    pub p: Vec<f64>,
    /// Curvature of the generating curve, `-rho'' / (1 + rho'^2)^(3/2)`.
    pub k: Vec<f64>,
    /// Axial normal component over height; satisfies `p^2 + q^2 = y^-2`.
    pub q: Vec<f64>,
    /// Mean curvature `k + p`.
    pub h: Vec<f64>,
    /// Squared norm of the second fundamental form, `k^2 + p^2`.
    pub a2: Vec<f64>,
    pub surface_area: f64,
    pub enclosed_volume: f64,
    /// Grid spacing of the originating profile.
    pub dx: f64,
}

impl GeometricState {
    pub fn n_nodes(&self) -> usize {
        self.y.len()
    }

    pub fn max_a2(&self) -> f64 {
        self.a2.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_abs_h(&self) -> f64 {
        self.h.iter().map(|h| h.abs()).fold(0.0, f64::max)
    }

    pub fn max_vy(&self) -> f64 {
        (0..self.n_nodes())
            .map(|j| self.y[j] * self.v[j])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_k_over_p(&self) -> f64 {
        (0..self.n_nodes())
            .map(|j| self.k[j] / self.p[j])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs_k_over_p(&self) -> f64 {
        (0..self.n_nodes())
            .map(|j| self.k[j].abs() / self.p[j])
            .fold(0.0, f64::max)
    }

    /// Worst relative defect of the identities `p^2 + q^2 = y^-2` and
    /// `v y = 1/p` over all nodes.
    pub fn identity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.n_nodes() {
            let inv_y2 = 1.0 / (self.y[j] * self.y[j]);
            let lhs = self.p[j] * self.p[j] + self.q[j] * self.q[j];
            worst = worst.max((lhs - inv_y2).abs() / inv_y2);
            let vy = self.v[j] * self.y[j];
            let inv_p = 1.0 / self.p[j];
            worst = worst.max((vy - inv_p).abs() / inv_p);
        }
        worst
    }
}

/// Composite trapezoid rule with a fixed left-to-right summation order.
pub(crate) fn trapezoid(f: &[f64], dx: f64) -> f64 {
    let n = f.len() - 1;
    let mut acc = 0.5 * f[0];
    for &fj in &f[1..n] {
        acc += fj;
    }
    acc += 0.5 * f[n];
    acc * dx
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit_interval() -> AxisInterval {
        AxisInterval::new(0.0, 1.0).unwrap()
    }

    fn cylinder(r: f64, n: usize) -> RadiusProfile {
        RadiusProfile::from_fn(unit_interval(), n, |_| r).unwrap()
    }

    #[test]
    fn interval_rejects_degenerate_bounds() {
        assert!(AxisInterval::new(1.0, 1.0).is_err());
        assert!(AxisInterval::new(2.0, 1.0).is_err());
        assert!(AxisInterval::new(f64::NAN, 1.0).is_err());
        assert!(AxisInterval::new(-1.0, 3.0).is_ok());
    }

    #[test]
    fn profile_construction_errors() {
        let iv = unit_interval();
        assert_eq!(
            RadiusProfile::new(iv, 8, vec![1.0; 9]),
            Err(ProfileError::TooFewCells(8))
        );
        assert_eq!(
            RadiusProfile::new(iv, 16, vec![1.0; 16]),
            Err(ProfileError::LengthMismatch {
                expected: 17,
                got: 16
            })
        );
        let mut rho = vec![1.0; 17];
        rho[3] = -0.5;
        assert_eq!(
            RadiusProfile::new(iv, 16, rho),
            Err(ProfileError::Pinch { node: 3, rho: -0.5 })
        );
        let mut rho = vec![1.0; 17];
        rho[5] = f64::NAN;
        assert_eq!(
            RadiusProfile::new(iv, 16, rho),
            Err(ProfileError::NonFinite(5))
        );
    }

    #[test]
    fn derivatives_of_constant_profile_vanish() {
        let profile = cylinder(1.0, 32);
        let (r1, r2) = profile.derivatives();
        assert!(r1.iter().all(|&d| d == 0.0));
        assert!(r2.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn derivatives_match_analytic_cosine() {
        // 2 + cos(pi x) has the same derivatives as cos(pi x) and stays
        // positive so it is a constructible profile.
        let n = 128;
        let profile = RadiusProfile::from_fn(unit_interval(), n, |x| 2.0 + (PI * x).cos()).unwrap();
        let (r1, r2) = profile.derivatives();
        let mid = n / 2; // x = 0.5
                         // Central-difference error is bounded by pi^3 dx^2 / 6 here.
        let dx = profile.dx();
        let tol1 = PI.powi(3) * dx * dx / 6.0 * 1.5;
        assert!((r1[mid] + PI).abs() <= tol1, "rho'(0.5) = {}", r1[mid]);
        assert!(r2[mid].abs() <= 1e-3, "rho''(0.5) = {}", r2[mid]);
    }

    #[test]
    fn ghost_reflection_zeroes_end_slopes() {
        let profile =
            RadiusProfile::from_fn(unit_interval(), 64, |x| 2.0 + (2.0 * PI * x).cos()).unwrap();
        let (r1, _) = profile.derivatives();
        assert_eq!(r1[0], 0.0);
        assert_eq!(r1[64], 0.0);
    }

    #[test]
    fn cylinder_state_is_exact() {
        let profile = cylinder(2.0, 32);
        let state = profile.geometric_state();
        for j in 0..state.n_nodes() {
            assert_eq!(state.v[j], 1.0);
            assert_eq!(state.p[j], 0.5);
            assert_eq!(state.k[j], 0.0);
            assert_eq!(state.q[j], 0.0);
            assert_eq!(state.h[j], 0.5);
            assert_eq!(state.a2[j], 0.25);
            assert_eq!(state.y[j], 2.0);
        }
        assert_relative_eq!(state.surface_area, 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(state.enclosed_volume, 4.0 * PI, max_relative = 1e-14);
    }

    #[test]
    fn catenoid_is_discretely_minimal_in_the_interior() {
        // rho = c cosh((x - x0)/c) has k = -p, so H = 0 away from the ends
        // (the mirror ghosts misrepresent the non-Neumann ends).
        let c = 0.8;
        let x0 = 0.5;
        let n = 256;
        let profile =
            RadiusProfile::from_fn(unit_interval(), n, |x| c * ((x - x0) / c).cosh()).unwrap();
        let state = profile.geometric_state();
        for j in 1..n {
            assert!(state.h[j].abs() <= 1e-3, "H[{j}] = {}", state.h[j]);
            assert_relative_eq!(state.k[j], -state.p[j], max_relative = 1e-3);
        }
    }

    fn perturbed_oracle_errors(n: usize) -> (f64, f64, f64) {
        // Closed-form derivatives of rho = 1 + 0.1 cos(2 pi x).
        let profile =
            RadiusProfile::from_fn(unit_interval(), n, |x| 1.0 + 0.1 * (2.0 * PI * x).cos())
                .unwrap();
        let state = profile.geometric_state();
        let mut err_k = 0.0f64;
        let mut err_h = 0.0f64;
        let mut err_v = 0.0f64;
        for j in 0..=n {
            let x = profile.x(j);
            let rho = 1.0 + 0.1 * (2.0 * PI * x).cos();
            let rho1 = -0.2 * PI * (2.0 * PI * x).sin();
            let rho2 = -0.4 * PI * PI * (2.0 * PI * x).cos();
            let v = (1.0 + rho1 * rho1).sqrt();
            let p = 1.0 / (rho * v);
            let k = -rho2 / (v * v * v);
            err_v = err_v.max((state.v[j] - v).abs());
            err_k = err_k.max((state.k[j] - k).abs());
            err_h = err_h.max((state.h[j] - (k + p)).abs());
        }
        (err_v, err_k, err_h)
    }

    #[test]
    fn perturbed_cylinder_matches_closed_form() {
        let (err_v, err_k, err_h) = perturbed_oracle_errors(256);
        assert!(err_v <= 1e-4, "v error {err_v}");
        assert!(err_k <= 1e-3, "k error {err_k}");
        assert!(err_h <= 1e-3, "H error {err_h}");
    }

    #[test]
    fn curvature_errors_converge_at_second_order() {
        let (_, k128, h128) = perturbed_oracle_errors(128);
        let (_, k512, h512) = perturbed_oracle_errors(512);
        let order_k = (k128 / k512).ln() / 4.0f64.ln();
        let order_h = (h128 / h512).ln() / 4.0f64.ln();
        assert!(order_k >= 1.9, "k order {order_k}");
        assert!(order_h >= 1.9, "H order {order_h}");
    }

    #[test]
    fn geometric_identities_hold_on_a_profile_family() {
        let iv = AxisInterval::new(-0.3, 1.7).unwrap();
        let profiles = vec![
            cylinder(0.7, 48),
            RadiusProfile::from_fn(unit_interval(), 128, |x| 1.0 + 0.1 * (2.0 * PI * x).cos())
                .unwrap(),
            RadiusProfile::from_fn(unit_interval(), 96, |x| 0.6 + 0.35 * (2.0 * PI * x).cos())
                .unwrap(),
            RadiusProfile::from_fn(iv, 80, |x| 0.8 + 0.3 * (3.0 * PI * (x + 0.3) / 2.0).cos())
                .unwrap(),
            RadiusProfile::from_fn(unit_interval(), 64, |x| 0.8 * ((x - 0.5) / 0.8).cosh())
                .unwrap(),
        ];
        for profile in &profiles {
            let state = profile.geometric_state();
            assert!(
                state.identity_defect() <= 1e-12,
                "identity defect {}",
                state.identity_defect()
            );
            assert!(state.v.iter().all(|&v| v >= 1.0));
            assert!(state.p.iter().all(|&p| p > 0.0));
        }
    }

    #[test]
    fn laplacian_of_constant_is_exactly_zero() {
        let profile =
            RadiusProfile::from_fn(unit_interval(), 64, |x| 0.6 + 0.35 * (2.0 * PI * x).cos())
                .unwrap();
        let lap = profile.surface_laplacian(&vec![3.25; 65]);
        assert!(lap.iter().all(|&l| l == 0.0));
    }

    #[test]
    fn laplacian_reduces_to_flat_on_a_cylinder() {
        // On rho = r the surface Laplacian of f(x) is the flat f''.
        let n = 256;
        let profile = cylinder(1.3, n);
        let f: Vec<f64> = (0..=n).map(|j| (2.0 * PI * profile.x(j)).cos()).collect();
        let lap = profile.surface_laplacian(&f);
        let mut worst = 0.0f64;
        for (j, &l) in lap.iter().enumerate() {
            let exact = -4.0 * PI * PI * (2.0 * PI * profile.x(j)).cos();
            worst = worst.max((l - exact).abs());
        }
        assert!(worst <= 5e-3, "flat Laplacian error {worst}");
    }

    #[test]
    fn stationary_cylinder_balance_is_exact() {
        // Delta y - 1/y + h p y = 0 on a unit cylinder with h = p = 1/r.
        let profile = cylinder(1.0, 64);
        let state = profile.geometric_state();
        let lap = profile.surface_laplacian(&state.y);
        for (j, &l) in lap.iter().enumerate() {
            let balance = l - 1.0 / state.y[j] + 1.0 * state.p[j] * state.y[j];
            assert_eq!(balance, 0.0);
        }
    }

    #[test]
    fn laplacian_converges_at_second_order() {
        let lap_error = |n: usize| -> f64 {
            let profile =
                RadiusProfile::from_fn(unit_interval(), n, |x| 1.0 + 0.1 * (2.0 * PI * x).cos())
                    .unwrap();
            let f: Vec<f64> = (0..=n).map(|j| (2.0 * PI * profile.x(j)).cos()).collect();
            let lap = profile.surface_laplacian(&f);
            let mut worst = 0.0f64;
            for (j, &l) in lap.iter().enumerate() {
                let x = profile.x(j);
                let rho = 1.0 + 0.1 * (2.0 * PI * x).cos();
                let rho1 = -0.2 * PI * (2.0 * PI * x).sin();
                let rho2 = -0.4 * PI * PI * (2.0 * PI * x).cos();
                let v2 = 1.0 + rho1 * rho1;
                let f1 = -2.0 * PI * (2.0 * PI * x).sin();
                let f2 = -4.0 * PI * PI * (2.0 * PI * x).cos();
                // (1/(rho v)) d/dx(rho f'/v) expanded in closed form.
                let exact = f2 / v2 + f1 * rho1 / (rho * v2) - f1 * rho1 * rho2 / (v2 * v2);
                worst = worst.max((l - exact).abs());
            }
            worst
        };
        let e128 = lap_error(128);
        let e512 = lap_error(512);
        let order = (e128 / e512).ln() / 4.0f64.ln();
        assert!(order >= 1.9, "laplacian order {order} ({e128} -> {e512})");
    }

    #[test]
    fn pinch_flag_uses_domain_scaled_threshold() {
        let iv = unit_interval();
        let mut rho = vec![1.0; 33];
        rho[16] = 9e-7;
        let profile = RadiusProfile::new(iv, 32, rho).unwrap();
        assert!(profile.is_pinched());
        assert!(!cylinder(1.0, 32).is_pinched());
    }
}
