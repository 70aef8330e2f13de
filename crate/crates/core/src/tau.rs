//! Sojourn-time profiles τ(x).
//!
//! Every profile is bounded below by a positive `tau_min`, which is what keeps
//! the departing rate γ = 1/τ finite everywhere.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TauProfile {
    /// τ = 1 on x < 0 and τ = 2 on x ≥ 0.
    TwoRegion,
    /// Spatially constant sojourn time.
    Constant { value: f64 },
    /// Piecewise constant: `levels[k]` on `(breakpoints[k], breakpoints[k + 1]]`,
    /// extended by the first and last level outside the breakpoint range.
    Staircase {
        breakpoints: Vec<f64>,
        levels: Vec<f64>,
    },
    /// `mean + amplitude * sin(x)`.
    Sinusoid { mean: f64, amplitude: f64 },
    /// Linear interpolation of `values` on the increasing `grid`, constant
    /// extension outside.
    Sampled { grid: Vec<f64>, values: Vec<f64> },
}

impl TauProfile {
    pub fn two_region() -> Self {
        TauProfile::TwoRegion
    }

    pub fn constant(value: f64) -> Result<Self> {
        let p = TauProfile::Constant { value };
        p.validate()?;
        Ok(p)
    }

    pub fn staircase(breakpoints: Vec<f64>, levels: Vec<f64>) -> Result<Self> {
        let p = TauProfile::Staircase {
            breakpoints,
            levels,
        };
        p.validate()?;
        Ok(p)
    }

    /// The four-level staircase 1, 2, 3, 4 on the unit intervals of (0, 4).
    pub fn unit_staircase() -> Self {
        TauProfile::Staircase {
            breakpoints: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            levels: vec![1.0, 2.0, 3.0, 4.0],
        }
    }

    pub fn sinusoid(mean: f64, amplitude: f64) -> Result<Self> {
        let p = TauProfile::Sinusoid { mean, amplitude };
        p.validate()?;
        Ok(p)
    }

    /// `1 + 0.5 sin(x)`.
    pub fn half_sine() -> Self {
        TauProfile::Sinusoid {
            mean: 1.0,
            amplitude: 0.5,
        }
    }

    pub fn sampled(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let p = TauProfile::Sampled { grid, values };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TauProfile::TwoRegion => {}
            TauProfile::Constant { value } => {
                if !(value.is_finite() && *value > 0.0) {
                    return Err(invalid("tau.value", "must be finite and > 0"));
                }
            }
            TauProfile::Staircase {
                breakpoints,
                levels,
            } => {
                if levels.is_empty() || breakpoints.len() != levels.len() + 1 {
                    return Err(invalid(
                        "tau.breakpoints",
                        "need exactly one more breakpoint than levels",
                    ));
                }
                check_increasing("tau.breakpoints", breakpoints)?;
                check_positive("tau.levels", levels)?;
            }
            TauProfile::Sinusoid { mean, amplitude } => {
                if !(mean.is_finite() && amplitude.is_finite()) || mean - amplitude.abs() <= 0.0 {
                    return Err(invalid("tau", "mean - |amplitude| must be > 0"));
                }
            }
            TauProfile::Sampled { grid, values } => {
                if grid.is_empty() || grid.len() != values.len() {
                    return Err(invalid("tau.grid", "grid and values must be non-empty and of equal length"));
                }
                check_increasing("tau.grid", grid)?;
                check_positive("tau.values", values)?;
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            TauProfile::TwoRegion => {
                if x < 0.0 {
                    1.0
                } else {
                    2.0
                }
            }
            TauProfile::Constant { value } => *value,
            TauProfile::Staircase {
                breakpoints,
                levels,
            } => {
                // first breakpoint >= x closes the interval containing x
                let k = breakpoints.partition_point(|&b| b < x);
                levels[k.saturating_sub(1).min(levels.len() - 1)]
            }
            TauProfile::Sinusoid { mean, amplitude } => mean + amplitude * x.sin(),
            TauProfile::Sampled { grid, values } => {
                let n = grid.len();
                if x <= grid[0] {
                    return values[0];
                }
                if x >= grid[n - 1] {
                    return values[n - 1];
                }
                let k = grid.partition_point(|&g| g <= x) - 1;
                let s = (x - grid[k]) / (grid[k + 1] - grid[k]);
                values[k] + s * (values[k + 1] - values[k])
            }
        }
    }

    /// γ(x) = 1/τ(x).
    pub fn gamma(&self, x: f64) -> f64 {
        1.0 / self.eval(x)
    }

    pub fn tau_min(&self) -> f64 {
        match self {
            TauProfile::TwoRegion => 1.0,
            TauProfile::Constant { value } => *value,
            TauProfile::Staircase { levels, .. } => levels.iter().copied().fold(f64::INFINITY, f64::min),
            TauProfile::Sinusoid { mean, amplitude } => mean - amplitude.abs(),
            TauProfile::Sampled { values, .. } => values.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    pub fn tau_max(&self) -> f64 {
        match self {
            TauProfile::TwoRegion => 2.0,
            TauProfile::Constant { value } => *value,
            TauProfile::Staircase { levels, .. } => levels.iter().copied().fold(0.0, f64::max),
            TauProfile::Sinusoid { mean, amplitude } => mean + amplitude.abs(),
            TauProfile::Sampled { values, .. } => values.iter().copied().fold(0.0, f64::max),
        }
    }

    /// Exact ∫_a^b τ(x) dx.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if b < a {
            return -self.integral(b, a);
        }
        match self {
            TauProfile::TwoRegion => {
                let left = (b.min(0.0) - a.min(0.0)).max(0.0);
                let right = (b.max(0.0) - a.max(0.0)).max(0.0);
                left + 2.0 * right
            }
            TauProfile::Constant { value } => value * (b - a),
            TauProfile::Staircase {
                breakpoints,
                levels,
            } => {
                let n = levels.len();
                let mut total = 0.0;
                for (k, &level) in levels.iter().enumerate() {
                    let lo = if k == 0 { f64::NEG_INFINITY } else { breakpoints[k] };
                    let hi = if k == n - 1 { f64::INFINITY } else { breakpoints[k + 1] };
                    let overlap = b.min(hi) - a.max(lo);
                    if overlap > 0.0 {
                        total += level * overlap;
                    }
                }
                total
            }
            TauProfile::Sinusoid { mean, amplitude } => mean * (b - a) + amplitude * (a.cos() - b.cos()),
            TauProfile::Sampled { grid, values } => {
                let n = grid.len();
                let mut total = 0.0;
                // constant tails
                if a < grid[0] {
                    total += values[0] * (b.min(grid[0]) - a);
                }
                if b > grid[n - 1] {
                    total += values[n - 1] * (b - a.max(grid[n - 1]));
                }
                for k in 0..n.saturating_sub(1) {
                    let lo = a.max(grid[k]);
                    let hi = b.min(grid[k + 1]);
                    if hi > lo {
                        total += 0.5 * (hi - lo) * (self.eval(lo) + self.eval(hi));
                    }
                }
                total
            }
        }
    }
}

fn check_increasing(name: &'static str, xs: &[f64]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) || xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid(name, "must be finite and strictly increasing"));
    }
    Ok(())
}

fn check_positive(name: &'static str, xs: &[f64]) -> Result<()> {
    if xs.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
        return Err(invalid(name, "must be finite and > 0"));
    }
    Ok(())
}
