//! Particle simulation of the walk with Gaussian jumps and a sojourn-time
//! budget.
//!
//! Each particle receives a budget T = 2t/Δx² and, while any budget remains,
//! jumps by N(0, Δx²) and pays τ at the reference point b·y + (1-b)·x of the
//! jump x → y. The last jump is always taken, even if it overdraws the budget.
//!
//! Every particle draws from its own ChaCha8 stream (the run seed as key,
//! the particle index as stream id), so results do not depend on how the
//! particles are scheduled across threads.

mod histogram;

pub use histogram::{
    band_exceedance_allowance, bins_outside_band, chi2_band, compare_histogram, histogram, multinomial_sigma, noise_l1, region_fractions, steady_state_reference,
    uniform_edges, Histogram, HistogramComparison,
};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::tau::TauProfile;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Domain {
    Line,
    Periodic { length: f64 },
}

/// Where a periodic run folds positions back into [0, L).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WrapPolicy {
    /// Fold the arrival point before evaluating the cost.
    #[default]
    WrapBeforeCost,
    /// Evaluate the cost on unfolded coordinates (τ read periodically) and
    /// fold only the final positions.
    WrapAfterCost,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialPositions {
    Point { a: f64 },
    /// Uniform on a periodic domain.
    Uniform,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McConfig {
    pub n_particles: usize,
    /// Standard deviation of a jump.
    pub dx: f64,
    /// Macroscopic time in the unit-diffusivity scale.
    pub t_phys: f64,
    pub tau: TauProfile,
    /// Reference point of the cost, 0 = departure, 1 = arrival.
    pub b: f64,
    pub domain: Domain,
    #[serde(default)]
    pub wrap_policy: WrapPolicy,
    pub init: InitialPositions,
    pub seed: u64,
}

impl McConfig {
    /// T = 2t/Δx², evaluated left to right.
    pub fn budget(&self) -> f64 {
        2.0 * self.t_phys / self.dx / self.dx
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 {
            return Err(invalid("n_particles", "must be positive"));
        }
        if !(self.dx.is_finite() && self.dx > 0.0) {
            return Err(invalid("dx", "must be finite and > 0"));
        }
        if !(self.t_phys.is_finite() && self.t_phys >= 0.0) {
            return Err(invalid("t_phys", "must be finite and >= 0"));
        }
        if !(0.0..=1.0).contains(&self.b) {
            return Err(invalid("b", "must lie in [0, 1]"));
        }
        self.tau.validate()?;
        match (self.domain, self.init) {
            (Domain::Periodic { length }, _) if !(length.is_finite() && length > 0.0) => {
                return Err(invalid("domain.length", "must be finite and > 0"));
            }
            (Domain::Line, InitialPositions::Uniform) => {
                return Err(invalid("init", "uniform initial positions need a periodic domain"));
            }
            (_, InitialPositions::Point { a }) if !a.is_finite() => {
                return Err(invalid("init.a", "must be finite"));
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParticleEnsemble {
    pub config: McConfig,
    pub positions: Vec<f64>,
    pub steps: Vec<u32>,
    /// Total cost paid by each particle.
    pub consumed: Vec<f64>,
}

fn fold(x: f64, length: f64) -> f64 {
    let r = x.rem_euclid(length);
    if r >= length {
        0.0
    } else {
        r
    }
}

struct Walker<'a> {
    cfg: &'a McConfig,
    budget: f64,
}

impl Walker<'_> {
    fn run(&self, index: u64) -> (f64, u32, f64) {
        let cfg = self.cfg;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index);
        let mut x = match (cfg.init, cfg.domain) {
            (InitialPositions::Point { a }, Domain::Periodic { length }) => fold(a, length),
            (InitialPositions::Point { a }, Domain::Line) => a,
            (InitialPositions::Uniform, Domain::Periodic { length }) => rng.random::<f64>() * length,
            (InitialPositions::Uniform, Domain::Line) => unreachable!("rejected by validate"),
        };
        let b = cfg.b;
        let mut remaining = self.budget;
        let mut consumed = 0.0;
        let mut steps = 0u32;
        while remaining > 0.0 {
            let jump: f64 = rng.sample::<f64, _>(StandardNormal) * cfg.dx;
            let cost = match (cfg.domain, cfg.wrap_policy) {
                (Domain::Line, _) => {
                    let y = x + jump;
                    let c = cfg.tau.eval(b * y + (1.0 - b) * x);
                    x = y;
                    c
                }
                (Domain::Periodic { length }, WrapPolicy::WrapBeforeCost) => {
                    let y = fold(x + jump, length);
                    let c = cfg.tau.eval(fold(b * y + (1.0 - b) * x, length));
                    x = y;
                    c
                }
                (Domain::Periodic { length }, WrapPolicy::WrapAfterCost) => {
                    let y = x + jump;
                    let c = cfg.tau.eval(fold(b * y + (1.0 - b) * x, length));
                    x = y;
                    c
                }
            };
            remaining -= cost;
            consumed += cost;
            steps += 1;
        }
        if let Domain::Periodic { length } = cfg.domain {
            x = fold(x, length);
        }
        (x, steps, consumed)
    }
}

const CHUNK: usize = 1 << 12;

/// Run the configured ensemble on the global rayon pool.
pub fn simulate(cfg: &McConfig) -> Result<ParticleEnsemble> {
    cfg.validate()?;
    let walker = Walker {
        cfg,
        budget: cfg.budget(),
    };
    let n = cfg.n_particles;
    let mut positions = vec![0.0; n];
    let mut steps = vec![0u32; n];
    let mut consumed = vec![0.0; n];
    positions
        .par_chunks_mut(CHUNK)
        .zip(steps.par_chunks_mut(CHUNK))
        .zip(consumed.par_chunks_mut(CHUNK))
        .enumerate()
        .for_each(|(chunk, ((pos, st), used))| {
            for k in 0..pos.len() {
                let (x, s, c) = walker.run((chunk * CHUNK + k) as u64);
                pos[k] = x;
                st[k] = s;
                used[k] = c;
            }
        });
    if positions.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("particle position"));
    }
    Ok(ParticleEnsemble {
        config: cfg.clone(),
        positions,
        steps,
        consumed,
    })
}

/// [`simulate`] on a dedicated pool of `workers` threads.
pub fn simulate_with_workers(cfg: &McConfig, workers: usize) -> Result<ParticleEnsemble> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| invalid("workers", e.to_string()))?;
    pool.install(|| simulate(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_config(n: usize) -> McConfig {
        McConfig {
            n_particles: n,
            dx: 0.1,
            t_phys: 0.5,
            tau: TauProfile::constant(1.0).unwrap(),
            b: 0.3,
            domain: Domain::Line,
            wrap_policy: WrapPolicy::WrapBeforeCost,
            init: InitialPositions::Point { a: 0.0 },
            seed: 7,
        }
    }

    #[test]
    fn budget_is_two_t_over_dx_squared() {
        let mut cfg = line_config(1);
        cfg.dx = 0.05;
        assert!((cfg.budget() - 400.0).abs() < 1e-9);
    }

    #[test]
    fn unit_tau_variance_is_two_t() {
        let n = 40_000;
        let cfg = line_config(n);
        let ens = simulate(&cfg).unwrap();
        let steps = ens.steps[0];
        assert!(ens.steps.iter().all(|&s| s == steps));
        let mean = ens.positions.iter().sum::<f64>() / n as f64;
        let var = ens.positions.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let expected = steps as f64 * cfg.dx * cfg.dx;
        assert!((expected - 2.0 * cfg.t_phys).abs() < 0.011);
        // sampling sd of a Gaussian sample variance: σ²√(2/(n-1))
        let sd = expected * (2.0 / (n - 1) as f64).sqrt();
        assert!((var - expected).abs() < 3.0 * sd, "var {var} vs {expected} ± {sd}");
    }

    #[test]
    fn overshoot_is_at_most_one_step() {
        let mut cfg = line_config(5000);
        cfg.tau = TauProfile::two_region();
        cfg.b = 1.0;
        let ens = simulate(&cfg).unwrap();
        let budget = cfg.budget();
        for &c in &ens.consumed {
            assert!(c >= budget && c < budget + cfg.tau.tau_max());
        }
    }

    #[test]
    fn periodic_positions_stay_in_domain() {
        let cfg = McConfig {
            n_particles: 3000,
            dx: 0.3,
            t_phys: 1.0,
            tau: TauProfile::unit_staircase(),
            b: 1.0,
            domain: Domain::Periodic { length: 4.0 },
            wrap_policy: WrapPolicy::WrapAfterCost,
            init: InitialPositions::Uniform,
            seed: 3,
        };
        let ens = simulate(&cfg).unwrap();
        assert!(ens.positions.iter().all(|&x| (0.0..4.0).contains(&x)));
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let mut cfg = line_config(10_000);
        cfg.tau = TauProfile::two_region();
        let one = simulate_with_workers(&cfg, 1).unwrap();
        let four = simulate_with_workers(&cfg, 4).unwrap();
        assert_eq!(one.positions, four.positions);
        assert_eq!(one.steps, four.steps);
        cfg.seed += 1;
        let other = simulate_with_workers(&cfg, 1).unwrap();
        assert_ne!(one.positions, other.positions);
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut cfg = line_config(10);
        cfg.b = 1.5;
        assert!(simulate(&cfg).is_err());
        let mut cfg = line_config(10);
        cfg.init = InitialPositions::Uniform;
        assert!(simulate(&cfg).is_err());
        let mut cfg = line_config(0);
        cfg.n_particles = 0;
        assert!(simulate(&cfg).is_err());
        let mut cfg = line_config(10);
        cfg.dx = 0.0;
        assert!(simulate(&cfg).is_err());
    }

    #[test]
    fn zero_time_keeps_initial_positions() {
        let mut cfg = line_config(100);
        cfg.t_phys = 0.0;
        cfg.init = InitialPositions::Point { a: 1.25 };
        let ens = simulate(&cfg).unwrap();
        assert!(ens.positions.iter().all(|&x| x == 1.25));
        assert!(ens.steps.iter().all(|&s| s == 0));
    }

    #[test]
    fn uniform_start_is_flat() {
        let n = 200_000;
        let cfg = McConfig {
            n_particles: n,
            dx: 0.1,
            t_phys: 0.0,
            tau: TauProfile::constant(1.0).unwrap(),
            b: 1.0,
            domain: Domain::Periodic { length: 4.0 },
            wrap_policy: WrapPolicy::WrapBeforeCost,
            init: InitialPositions::Uniform,
            seed: 11,
        };
        let ens = simulate(&cfg).unwrap();
        let edges = uniform_edges(0.0, 4.0, 0.1).unwrap();
        let h = histogram(&ens.positions, &edges).unwrap();
        assert_eq!(h.total(), n as u64);
        let expected = steady_state_reference(&cfg.tau, &edges, n as u64).unwrap();
        let sigma = multinomial_sigma(&expected, n as u64);
        let outside = h
            .counts
            .iter()
            .zip(expected.iter().zip(&sigma))
            .filter(|(&c, (&e, &s))| (c as f64 - e).abs() > 3.0 * s)
            .count();
        // 40 bins, P(|Z| > 3) ≈ 0.0027 each
        assert!(outside <= 1, "{outside} bins outside 3σ");
        let cmp = compare_histogram(&h, &expected).unwrap();
        let dof = cmp.dof as f64;
        assert!((cmp.chi2 - dof).abs() <= 4.0 * (2.0 * dof).sqrt());
    }
}
