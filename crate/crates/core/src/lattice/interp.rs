use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::reduced::ReducedState;
use super::{cell_index, node};

/// The four continuum projections of a reduced trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterpolantKind {
    /// Constant on every space-time cell.
    PiecewiseConstant,
    /// Linear in t, constant in y.
    TimeLinear,
    /// Constant in t, linear in y.
    SpaceLinear,
    /// Bilinear; Lipschitz on the whole half-plane.
    Bilinear,
}

/// Evaluate an interpolant of `traj` at walk time `t` and position `y`.
///
/// `traj` must hold consecutive reduced steps. The box covered is
/// `[traj[0].time(), traj.last().time()]` in time and the union of the stored
/// windows in space.
pub fn interpolate(traj: &[ReducedState], t: f64, y: f64, kind: InterpolantKind) -> Result<f64> {
    let first = traj.first().ok_or(Error::OutOfRange { t, y })?;
    let last = traj.last().expect("non-empty");
    let eps = first.eps;
    let lo = traj.iter().map(|s| s.start).min().expect("non-empty");
    let hi = traj.iter().map(|s| s.end()).max().expect("non-empty");
    let in_time = t >= first.time() && t <= last.time();
    let in_space = y >= node(eps, lo) && y <= node(eps, hi);
    if !(in_time && in_space) {
        return Err(Error::OutOfRange { t, y });
    }

    let dt = 2.0 * eps * eps;
    let mut k = (((t - first.time()) / dt).floor() as usize).min(traj.len() - 1);
    if k + 1 < traj.len() && traj[k + 1].time() <= t {
        k += 1;
    }
    let lambda = if k + 1 < traj.len() {
        ((t - traj[k].time()) / dt).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let j = cell_index(eps, y);
    let nu = (y - node(eps, j)) / (node(eps, j + 1) - node(eps, j));

    let now = &traj[k];
    let later = traj.get(k + 1).unwrap_or(now);
    let w00 = now.get(j);
    let w01 = now.get(j + 1);
    let w10 = later.get(j);
    let w11 = later.get(j + 1);

    Ok(match kind {
        InterpolantKind::PiecewiseConstant => w00,
        InterpolantKind::TimeLinear => lambda * w10 + (1.0 - lambda) * w00,
        InterpolantKind::SpaceLinear => nu * w01 + (1.0 - nu) * w00,
        InterpolantKind::Bilinear => {
            lambda * nu * w11 + lambda * (1.0 - nu) * w10 + (1.0 - lambda) * nu * w01 + (1.0 - lambda) * (1.0 - nu) * w00
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::reduced::evolve;

    const KINDS: [InterpolantKind; 4] = [
        InterpolantKind::PiecewiseConstant,
        InterpolantKind::TimeLinear,
        InterpolantKind::SpaceLinear,
        InterpolantKind::Bilinear,
    ];

    fn trajectory() -> Vec<ReducedState> {
        let eps = 0.125;
        let w = (-6..=6).map(|j: i64| 1.0 + (j as f64 * 0.7).sin().abs()).collect();
        evolve(&ReducedState::new(eps, 0, -6, w).unwrap(), 4)
    }

    #[test]
    fn all_kinds_hit_grid_values() {
        let traj = trajectory();
        for s in &traj {
            for j in s.indices() {
                for kind in KINDS {
                    let v = interpolate(&traj, s.time(), node(s.eps, j), kind).unwrap();
                    assert_eq!(v, s.get(j), "{kind:?} at ℓ={}, j={j}", s.ell);
                }
            }
        }
    }

    #[test]
    fn bilinear_cell_center_is_corner_mean() {
        let traj = trajectory();
        let eps = traj[0].eps;
        let (ell, j) = (1, -2);
        let t = traj[ell].time() + eps * eps;
        let y = 0.5 * (node(eps, j) + node(eps, j + 1));
        let v = interpolate(&traj, t, y, InterpolantKind::Bilinear).unwrap();
        let mean = 0.25 * (traj[ell].get(j) + traj[ell].get(j + 1) + traj[ell + 1].get(j) + traj[ell + 1].get(j + 1));
        assert!((v - mean).abs() < 1e-15);
    }

    #[test]
    fn time_linear_midpoint() {
        let traj = trajectory();
        let eps = traj[0].eps;
        let y = node(eps, 3) + 0.3 * eps;
        let t = traj[2].time() + eps * eps;
        let v = interpolate(&traj, t, y, InterpolantKind::TimeLinear).unwrap();
        assert!((v - 0.5 * (traj[2].get(3) + traj[3].get(3))).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_rejected() {
        let traj = trajectory();
        let end = traj.last().unwrap().time();
        assert!(interpolate(&traj, end + 1e-9, 0.0, InterpolantKind::Bilinear).is_err());
        assert!(interpolate(&traj, -1e-9, 0.0, InterpolantKind::Bilinear).is_err());
        assert!(interpolate(&traj, 0.0, 100.0, InterpolantKind::Bilinear).is_err());
        assert!(interpolate(&[], 0.0, 0.0, InterpolantKind::Bilinear).is_err());
    }
}
