//! Green's functions of v_t = (v/τ)_xx for the two-region sojourn time
//! τ = 1 (x < 0), τ = 2 (x ≥ 0), with a point source at x = a.
//!
//! The work is done on w = v/τ, which solves w_t = γ(y) w_yy and is C¹
//! across the interface. Its kernel splits into
//!
//! * a boundary-driven part, fed by the common interface value
//!   g(t) = (√2 - 1)/√(πt) · exp(-A/t), with A = a²/2 for a > 0, a²/4 for
//!   a < 0 and A = 0 for a = 0;
//! * an image-source part, present only on the source's side of the
//!   interface.
//!
//! The boundary part is written as an integral over η ∈ (η₀, ∞) with
//! η₀ = |y|/√(4κt), κ = γ(y), and evaluated after the change of variable
//! η = η₀ + u², which removes the inverse square-root endpoint singularity and
//! stays well conditioned as y → 0.
//!
//! All times are in the unit-diffusivity scale; use [`rescale_time`] to map a
//! D-scaled problem onto it.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate, integrate_pieces, Tolerance};

/// Interface side for one-sided values of the discontinuous G at x = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreensQuery {
    pub t: f64,
    pub position: f64,
    pub a: f64,
    pub side: Option<Side>,
}

impl GreensQuery {
    pub fn new(t: f64, position: f64, a: f64) -> Self {
        GreensQuery {
            t,
            position,
            a,
            side: None,
        }
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = Some(side);
        self
    }
}

const C: f64 = SQRT_2 - 1.0;

/// γ = 1/τ.
fn gamma(y: f64) -> f64 {
    if y < 0.0 {
        1.0
    } else {
        0.5
    }
}

/// Exponent scale A of the interface value for a source at `a`.
pub fn source_decay(a: f64) -> f64 {
    if a > 0.0 {
        0.5 * a * a
    } else {
        0.25 * a * a
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(invalid("t", "must be finite and > 0"));
    }
    Ok(())
}

fn kernel_tolerance() -> Tolerance {
    Tolerance {
        abs: 1e-13,
        rel: 1e-11,
        max_splits: 1 << 12,
    }
}

/// Interface value W(t, 0; a).
pub fn boundary_g(t: f64, a: f64) -> Result<f64> {
    check_time(t)?;
    Ok(C / (PI * t).sqrt() * (-source_decay(a) / t).exp())
}

/// Boundary-driven part of W at `y` for interface data with decay `decay`:
///
/// (2(√2-1)/π) ∫_{η₀}^∞ exp(-A/s) e^{-η²} / √s dη,  s = t - y²/(4κη²).
pub fn boundary_term(t: f64, y: f64, decay: f64) -> Result<f64> {
    check_time(t)?;
    if y == 0.0 {
        return Ok(C / (PI * t).sqrt() * (-decay / t).exp());
    }
    let kappa = gamma(y);
    let eta0 = y.abs() / (4.0 * kappa * t).sqrt();
    if eta0 > 27.0 {
        return Ok(0.0);
    }
    let sqrt_t = t.sqrt();
    // η = η₀ + u², s = t u²(2η₀ + u²)/η²
    let integrand = |u: f64| {
        let u2 = u * u;
        let eta = eta0 + u2;
        let s = t * u2 * (2.0 * eta0 + u2) / (eta * eta);
        let damp = if decay > 0.0 {
            if s > 0.0 {
                (-decay / s).exp()
            } else {
                0.0
            }
        } else {
            1.0
        };
        2.0 * eta * (-eta * eta).exp() * damp / (sqrt_t * (2.0 * eta0 + u2).sqrt())
    };
    let value = integrate(integrand, 0.0, 3.0, kernel_tolerance())?.value;
    Ok(2.0 * C / PI * value)
}

/// Image-source part of W: nonzero only when `y` and `a` lie strictly on the
/// same side of the interface.
pub fn image_term(t: f64, y: f64, a: f64) -> Result<f64> {
    check_time(t)?;
    if a > 0.0 && y > 0.0 {
        Ok(((-(y - a).powi(2) / (2.0 * t)).exp() - (-(y + a).powi(2) / (2.0 * t)).exp()) / (2.0 * (2.0 * PI * t).sqrt()))
    } else if a < 0.0 && y < 0.0 {
        Ok(((-(y - a).powi(2) / (4.0 * t)).exp() - (-(y + a).powi(2) / (4.0 * t)).exp()) / (2.0 * (PI * t).sqrt()))
    } else {
        Ok(0.0)
    }
}

/// W(t, y; a), the kernel of w_t = γ(y) w_yy with w(0, ·) = γ δ_a.
pub fn greens_w(t: f64, y: f64, a: f64) -> Result<f64> {
    check_time(t)?;
    if y == 0.0 {
        return boundary_g(t, a);
    }
    Ok(boundary_term(t, y, source_decay(a))? + image_term(t, y, a)?)
}

/// G(t, x; a) = τ(x) W(t, x; a). At x = 0 the query must name a side.
pub fn greens_v(q: &GreensQuery) -> Result<f64> {
    let tau = if q.position == 0.0 {
        match q.side.ok_or(Error::MissingSide)? {
            Side::Left => 1.0,
            Side::Right => 2.0,
        }
    } else if q.position < 0.0 {
        1.0
    } else {
        2.0
    };
    Ok(tau * greens_w(q.t, q.position, q.a)?)
}

/// G away from the interface, or the right-side value at x = 0.
pub fn greens_v_at(t: f64, x: f64, a: f64) -> Result<f64> {
    greens_v(&GreensQuery::new(t, x, a).with_side(Side::Right))
}

/// Time at which the D-scaled problem matches the unit-scale kernel at `t0`.
pub fn rescale_time(t0: f64, d: f64) -> Result<f64> {
    if !(d.is_finite() && d > 0.0) {
        return Err(invalid("D", "must be finite and > 0"));
    }
    Ok(t0 / d)
}

/// Half-width beyond which the kernel mass is negligible.
pub fn mass_radius(t: f64) -> f64 {
    10.0 * (2.0 * t * 2.0).sqrt()
}

/// ∫ G(t, x; a) dx over the line, truncated at [`mass_radius`] and split at
/// the interface and the source.
pub fn greens_mass(t: f64, a: f64) -> Result<f64> {
    check_time(t)?;
    let r = mass_radius(t);
    let mut breaks = vec![a.min(0.0) - r, 0.0, a, a.max(0.0) + r];
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let tol = Tolerance {
        abs: 1e-10,
        rel: 1e-10,
        max_splits: 1 << 12,
    };
    // G is evaluated only at interior quadrature nodes, never at x = 0
    let value = integrate_pieces(
        |x| greens_v_at(t, x, a).unwrap_or(f64::NAN),
        &breaks,
        tol,
    )?;
    Ok(value.value)
}

/// ∫_lo^hi G(t, x; a) dx, split at the interface when it lies inside.
pub fn greens_cell_integral(t: f64, a: f64, lo: f64, hi: f64) -> Result<f64> {
    let mut breaks = vec![lo];
    if lo < 0.0 && hi > 0.0 {
        breaks.push(0.0);
    }
    if lo < a && hi > a && a != 0.0 {
        breaks.push(a);
    }
    breaks.push(hi);
    breaks.sort_by(f64::total_cmp);
    let tol = Tolerance {
        abs: 1e-12,
        rel: 1e-10,
        max_splits: 1 << 12,
    };
    Ok(integrate_pieces(|x| greens_v_at(t, x, a).unwrap_or(f64::NAN), &breaks, tol)?.value)
}

/// |∂_t W - γ(y) ∂_yy W| by central differences of step `h` in both t and y.
pub fn pde_residual(t: f64, y: f64, a: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || t <= h * h || t <= h || y.abs() <= 2.0 * h {
        return Err(invalid("h", "need t > h, |y| > 2h and h > 0"));
    }
    let w = |t: f64, y: f64| greens_w(t, y, a);
    let dt = (w(t + h, y)? - w(t - h, y)?) / (2.0 * h);
    let dyy = (w(t, y + h)? - 2.0 * w(t, y)? + w(t, y - h)?) / (h * h);
    Ok((dt - gamma(y) * dyy).abs())
}

/// |∂_y W(t, 0+) - ∂_y W(t, 0-)| from second-order one-sided differences.
pub fn interface_c1_defect(t: f64, a: f64) -> Result<f64> {
    check_time(t)?;
    let h = 1e-4 * t.sqrt();
    let w0 = greens_w(t, 0.0, a)?;
    let right = (-3.0 * w0 + 4.0 * greens_w(t, h, a)? - greens_w(t, 2.0 * h, a)?) / (2.0 * h);
    let left = (3.0 * w0 - 4.0 * greens_w(t, -h, a)? + greens_w(t, -2.0 * h, a)?) / (2.0 * h);
    Ok((right - left).abs())
}
