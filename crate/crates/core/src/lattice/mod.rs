//! Discrete random walk with a two-region sojourn time.
//!
//! The raw chain lives on the uniform lattice x^j = jε with time levels
//! t_n = nε² and needs two previous rows, because a jump out of x > 0 takes
//! twice as long as one out of x < 0. Sampling even time levels and even
//! sites of the left region gives a Markov chain on the non-uniform grid
//!
//! ```text
//! y^j = 2jε (j < 0),   y^j = jε (j >= 0),   Δy^j = 2ε or ε
//! ```
//!
//! whose rows w_ℓ^j = p̃_ℓ^j / (2ε) are the density-like quantity that
//! converges as ε → 0. The density itself is v = τ w with τ = 1 left of the
//! origin and τ = 2 from the origin on.

mod interp;
mod raw;
mod reduced;

pub use interp::{interpolate, InterpolantKind};
pub use raw::{evolve_raw, raw_site, reduce_from_raw, reduce_state, step_raw, RawLatticeState, Row};
pub use reduced::{
    difference_quotients, energy, evolve, mass, nodes, parity_average, quotient_identity_defect, step_reduced,
    step_reduced_with, QuotientField, ReducedState, ReducedStencil,
};

use crate::error::{invalid, Error, Result};
use crate::quadrature::gauss_legendre5;

/// Reduced grid node y^j.
pub fn node(eps: f64, j: i64) -> f64 {
    if j < 0 {
        2.0 * eps * j as f64
    } else {
        eps * j as f64
    }
}

/// Δy^j = y^{j+1} - y^j.
pub fn spacing(eps: f64, j: i64) -> f64 {
    if j < 0 {
        2.0 * eps
    } else {
        eps
    }
}

/// Sojourn time of cell [y^j, y^{j+1}).
pub fn cell_tau(j: i64) -> f64 {
    if j < 0 {
        1.0
    } else {
        2.0
    }
}

/// Index j with y^j <= y < y^{j+1}.
pub fn cell_index(eps: f64, y: f64) -> i64 {
    let mut j = if y < 0.0 {
        (y / (2.0 * eps)).floor() as i64
    } else {
        (y / eps).floor() as i64
    };
    while node(eps, j) > y {
        j -= 1;
    }
    while node(eps, j + 1) <= y {
        j += 1;
    }
    j
}

/// Cell averages w_0^j = (1/2ε) ∫_{y^j}^{y^{j+1}} v0 of a nonnegative initial
/// density, over every cell meeting `support`.
///
/// Each cell is integrated with one five-point Gauss–Legendre panel; cells
/// never straddle the origin, so a jump of v0 there costs no accuracy.
pub fn discretize_initial<F: Fn(f64) -> f64>(v0: F, eps: f64, support: (f64, f64)) -> Result<ReducedState> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(invalid("eps", "must be finite and > 0"));
    }
    let (a, b) = support;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(invalid("support", "need a finite interval a < b"));
    }
    let j_lo = cell_index(eps, a);
    let mut j_hi = cell_index(eps, b);
    if node(eps, j_hi) == b {
        j_hi -= 1;
    }
    let mut w = Vec::with_capacity((j_hi - j_lo + 1) as usize);
    for j in j_lo..=j_hi {
        let lo = node(eps, j);
        let hi = node(eps, j + 1);
        let mut bad = None;
        let integral = gauss_legendre5(
            |x| {
                let v = v0(x);
                if !(v >= 0.0) && bad.is_none() {
                    bad = Some((x, v));
                }
                v
            },
            lo,
            hi,
            1,
        );
        if let Some((x, value)) = bad {
            return Err(Error::NegativeDensity { x, value });
        }
        w.push(integral / (2.0 * eps));
    }
    ReducedState::new(eps, 0, j_lo, w)
}

/// Density samples (y^j, v^j) with v^j = τ(cell) w^j.
pub fn density(state: &ReducedState) -> Vec<(f64, f64)> {
    state
        .indices()
        .map(|j| (node(state.eps, j), cell_tau(j) * state.get(j)))
        .collect()
}
