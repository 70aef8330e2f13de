//! Explicit finite differences for v_t = D (v/τ)_xx.
//!
//! The solver advances w = v/τ on a cell-centered grid,
//! τ_i (w_i' - w_i) = k D (w_{i-1} - 2 w_i + w_{i+1}) / h²,
//! and returns v = τ w. With the grid aligned to the breakpoints of a
//! piecewise-constant τ, every jump of τ falls on a cell face.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::tau::TauProfile;

/// Safety factor applied to the explicit stability limit.
pub const CFL_SAFETY: f64 = 0.9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Periodic,
    /// Homogeneous Neumann data for w.
    ZeroFlux,
    /// w = 0 beyond the domain.
    TruncatedZero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PdeGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub h: f64,
    pub bc: Boundary,
    /// Time step.
    pub k: f64,
    pub d: f64,
}

impl PdeGrid {
    /// A grid with the largest admissible time step for `tau`.
    pub fn new(x_min: f64, x_max: f64, h: f64, bc: Boundary, d: f64, tau: &TauProfile) -> Result<Self> {
        let mut grid = PdeGrid {
            x_min,
            x_max,
            h,
            bc,
            k: 0.0,
            d,
        };
        grid.validate_geometry()?;
        tau.validate()?;
        grid.k = grid.k_max(tau);
        Ok(grid)
    }

    /// Replace the time step, checking stability.
    pub fn with_step(mut self, k: f64, tau: &TauProfile) -> Result<Self> {
        self.k = k;
        self.check(tau)?;
        Ok(self)
    }

    fn validate_geometry(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(invalid("grid", "need finite x_min < x_max"));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(invalid("grid.h", "must be finite and > 0"));
        }
        if !(self.d.is_finite() && self.d > 0.0) {
            return Err(invalid("grid.d", "must be finite and > 0"));
        }
        let cells = (self.x_max - self.x_min) / self.h;
        if (cells - cells.round()).abs() > 1e-9 * cells.max(1.0) || cells.round() < 3.0 {
            return Err(invalid("grid.h", "must divide the domain into at least 3 cells"));
        }
        Ok(())
    }

    pub fn check(&self, tau: &TauProfile) -> Result<()> {
        self.validate_geometry()?;
        tau.validate()?;
        let k_max = self.k_max(tau);
        if !(self.k > 0.0 && self.k <= k_max) {
            return Err(Error::Cfl { k: self.k, k_max });
        }
        Ok(())
    }

    /// 0.9 h² / (2 D max γ).
    pub fn k_max(&self, tau: &TauProfile) -> f64 {
        CFL_SAFETY * self.h * self.h * tau.tau_min() / (2.0 * self.d)
    }

    pub fn cells(&self) -> usize {
        ((self.x_max - self.x_min) / self.h).round() as usize
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.cells())
            .map(|i| self.x_min + (i as f64 + 0.5) * self.h)
            .collect()
    }

    /// (x_i - h/2, x_i + h/2) for every cell.
    pub fn faces(&self, i: usize) -> (f64, f64) {
        let lo = self.x_min + i as f64 * self.h;
        (lo, lo + self.h)
    }
}

/// D = Δx² / (2 n Δt).
pub fn diffusivity(dx: f64, dt: f64, n_dim: u32) -> Result<f64> {
    if !(dx.is_finite() && dx > 0.0 && dt.is_finite() && dt > 0.0 && n_dim > 0) {
        return Err(invalid("diffusivity", "need dx > 0, dt > 0, n_dim > 0"));
    }
    Ok(dx * dx / (2.0 * n_dim as f64 * dt))
}

/// Half-width 10·√(2 D t max τ) to add on each side of the initial support on
/// a truncated line.
pub fn truncation_padding(d: f64, t: f64, tau: &TauProfile) -> f64 {
    10.0 * (2.0 * d * t * tau.tau_max()).sqrt()
}

/// Σ h v_i.
pub fn mass(v: &[f64], h: f64) -> f64 {
    h * v.iter().sum::<f64>()
}

/// Advance `v0` from t = 0 to `t_end`. `observe` sees (t, v) after every step.
pub fn solve_observed<F: FnMut(f64, &[f64])>(
    tau: &TauProfile,
    v0: &[f64],
    grid: &PdeGrid,
    t_end: f64,
    mut observe: F,
) -> Result<Vec<f64>> {
    grid.check(tau)?;
    let n = grid.cells();
    if v0.len() != n {
        return Err(invalid("v0", format!("expected {n} cell values, got {}", v0.len())));
    }
    if let Some((i, &v)) = v0.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
        return Err(Error::NegativeDensity {
            x: grid.centers()[i],
            value: v,
        });
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(invalid("t_end", "must be finite and >= 0"));
    }
    let tau_c: Vec<f64> = grid.centers().iter().map(|&x| tau.eval(x)).collect();
    let mut w: Vec<f64> = v0.iter().zip(&tau_c).map(|(v, t)| v / t).collect();
    let steps = (t_end / grid.k).ceil() as usize;
    if steps == 0 {
        return Ok(v0.to_vec());
    }
    let k = t_end / steps as f64;
    let r = k * grid.d / (grid.h * grid.h);
    let coef: Vec<f64> = tau_c.iter().map(|t| r / t).collect();
    let mut next = vec![0.0; n];
    let mut v = vec![0.0; n];
    for s in 1..=steps {
        for i in 0..n {
            let left = if i > 0 {
                w[i - 1]
            } else {
                match grid.bc {
                    Boundary::Periodic => w[n - 1],
                    Boundary::ZeroFlux => w[0],
                    Boundary::TruncatedZero => 0.0,
                }
            };
            let right = if i + 1 < n {
                w[i + 1]
            } else {
                match grid.bc {
                    Boundary::Periodic => w[0],
                    Boundary::ZeroFlux => w[n - 1],
                    Boundary::TruncatedZero => 0.0,
                }
            };
            next[i] = w[i] + coef[i] * (left - 2.0 * w[i] + right);
        }
        std::mem::swap(&mut w, &mut next);
        for i in 0..n {
            v[i] = tau_c[i] * w[i];
        }
        observe(s as f64 * k, &v);
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("pde solution"));
    }
    Ok(v)
}

pub fn solve(tau: &TauProfile, v0: &[f64], grid: &PdeGrid, t_end: f64) -> Result<Vec<f64>> {
    solve_observed(tau, v0, grid, t_end, |_, _| {})
}

/// C τ at the cell centers with C = mass / ∫τ over the domain.
pub fn steady_state(tau: &TauProfile, total_mass: f64, grid: &PdeGrid) -> Result<Vec<f64>> {
    if grid.bc == Boundary::TruncatedZero {
        return Err(invalid("grid.bc", "a steady state needs a closed domain"));
    }
    let c = total_mass / tau.integral(grid.x_min, grid.x_max);
    Ok(grid.centers().iter().map(|&x| c * tau.eval(x)).collect())
}

/// Σ h |a - b| / Σ h |b|.
pub fn l1_rel(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
    let den: f64 = b.iter().map(|y| y.abs()).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn heat_kernel(x: f64, t: f64) -> f64 {
        (-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
    }

    #[test]
    fn diffusivity_values() {
        assert!((diffusivity(0.1, 1.0, 1).unwrap() - 0.005).abs() < 1e-17);
        assert_eq!(diffusivity(1.0, 1.0, 1).unwrap(), 0.5);
        assert!((diffusivity(0.05, 1.0, 1).unwrap() - 0.00125).abs() < 1e-18);
        assert!(diffusivity(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn cfl_violation_reports_limit() {
        let tau = TauProfile::two_region();
        let grid = PdeGrid::new(-1.0, 1.0, 0.1, Boundary::ZeroFlux, 1.0, &tau).unwrap();
        let k_max = grid.k_max(&tau);
        assert!((k_max - 0.9 * 0.01 / 2.0).abs() < 1e-15);
        match grid.with_step(2.0 * k_max, &tau) {
            Err(Error::Cfl { k_max: m, .. }) => assert_eq!(m, k_max),
            other => panic!("expected CFL error, got {other:?}"),
        }
    }

    #[test]
    fn heat_kernel_second_order() {
        let tau = TauProfile::constant(1.0).unwrap();
        let (t0, t1) = (0.1, 0.5);
        let mut errors = Vec::new();
        for h in [0.04, 0.02, 0.01] {
            let grid = PdeGrid::new(-8.0, 8.0, h, Boundary::TruncatedZero, 1.0, &tau).unwrap();
            let x = grid.centers();
            let v0: Vec<f64> = x.iter().map(|&x| heat_kernel(x, t0)).collect();
            let v = solve(&tau, &v0, &grid, t1 - t0).unwrap();
            let exact: Vec<f64> = x.iter().map(|&x| heat_kernel(x, t1)).collect();
            errors.push(l1_rel(&v, &exact));
        }
        for pair in errors.windows(2) {
            let order = (pair[0] / pair[1]).log2();
            assert!(order > 1.7, "errors {errors:?}");
        }
    }

    #[test]
    fn proportional_data_is_fixed() {
        let tau = TauProfile::unit_staircase();
        let grid = PdeGrid::new(0.0, 4.0, 0.05, Boundary::Periodic, 1.0, &tau).unwrap();
        let v0 = steady_state(&tau, 1.0, &grid).unwrap();
        assert!((v0[0] - 0.1).abs() < 1e-15 && (v0[79] - 0.4).abs() < 1e-15);
        let v = solve(&tau, &v0, &grid, 2.0).unwrap();
        for (a, b) in v.iter().zip(&v0) {
            assert!((a - b).abs() <= 1e-13);
        }
    }

    #[test]
    fn mass_conserved_zero_flux_and_periodic() {
        let tau = TauProfile::half_sine();
        for bc in [Boundary::Periodic, Boundary::ZeroFlux] {
            let grid = PdeGrid::new(0.0, 2.0 * PI, 2.0 * PI / 64.0, bc, 1.0, &tau).unwrap();
            let v0: Vec<f64> = grid.centers().iter().map(|&x| (x - 2.0).powi(2)).collect();
            let m0 = mass(&v0, grid.h);
            let v = solve(&tau, &v0, &grid, 1.0).unwrap();
            assert!((mass(&v, grid.h) - m0).abs() < 1e-12 * m0);
        }
    }

    #[test]
    fn steady_state_examples() {
        let one = TauProfile::constant(1.0).unwrap();
        let grid = PdeGrid::new(0.0, 4.0, 0.5, Boundary::Periodic, 1.0, &one).unwrap();
        assert!(steady_state(&one, 1.0, &grid).unwrap().iter().all(|&v| (v - 0.25).abs() < 1e-16));
        let sine = TauProfile::half_sine();
        let grid = PdeGrid::new(0.0, 2.0 * PI, 2.0 * PI / 16.0, Boundary::Periodic, 1.0, &sine).unwrap();
        let s = steady_state(&sine, 1.0, &grid).unwrap();
        for (x, v) in grid.centers().iter().zip(&s) {
            assert!((v - (1.0 + 0.5 * x.sin()) / (2.0 * PI)).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_negative_initial_data() {
        let tau = TauProfile::two_region();
        let grid = PdeGrid::new(-1.0, 1.0, 0.5, Boundary::ZeroFlux, 1.0, &tau).unwrap();
        assert!(matches!(
            solve(&tau, &[1.0, -1.0, 0.0, 0.0], &grid, 0.1),
            Err(Error::NegativeDensity { .. })
        ));
        assert!(solve(&tau, &[1.0, 1.0], &grid, 0.1).is_err());
    }
}
