//! Run orchestration for the `sojourn` command line: configuration, engine
//! runs, CSV/JSON artifacts and the acceptance criteria.
//!
//! Time bookkeeping lives here. The lattice with spacing ε runs the
//! D-scaled equation with D = ε²/2 per raw step, so n raw steps reach the
//! unit-scale time n·D; Monte Carlo budgets and kernel queries are already in
//! the unit scale.

pub mod commands;
pub mod config;
pub mod csv;
pub mod report;
pub mod verify;

use crate::error::{invalid, Result};
use crate::greens::rescale_time;
use crate::pde::diffusivity;

/// Seed used when neither the config nor `--seed` provides one.
pub const DEFAULT_SEED: u64 = 12345;

/// Unit-scale time reached after `raw_steps` lattice steps of spacing `eps`.
pub fn lattice_time(raw_steps: usize, eps: f64) -> Result<f64> {
    let d = diffusivity(eps, 1.0, 1)?;
    let t = raw_steps as f64 * d;
    if raw_steps > 0 && (rescale_time(t, d)? - raw_steps as f64).abs() > 1e-9 * raw_steps as f64 {
        return Err(invalid("raw_steps", "time conversion is not invertible"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_steps_to_unit_time() {
        assert!((lattice_time(100, 0.1).unwrap() - 0.5).abs() < 1e-14);
        assert!((lattice_time(400, 0.05).unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(lattice_time(0, 0.05).unwrap(), 0.0);
    }
}
