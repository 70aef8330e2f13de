//! Engine runs behind the CLI subcommands. Each `run_*` computes in memory;
//! each `cmd_*` writes its CSV files and `report.json` into `out`.

use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use super::config::{
    require, ChainKind, ConvergeSection, GreensSection, InitialDensity, LatticeSection, McSection, PdeSection,
    RunConfig,
};
use super::csv::{self, Table};
use super::report::{Comparison, ComparisonReport, Metric};
use super::{lattice_time, DEFAULT_SEED};
use crate::error::{invalid, Result};
use crate::greens::{greens_cell_integral, greens_v, greens_v_at, mass_radius, GreensQuery, Side};
use crate::lattice::{
    cell_index, cell_tau, difference_quotients, discretize_initial, energy, evolve, evolve_raw, mass, node,
    parity_average, reduce_from_raw, spacing, RawLatticeState, ReducedState,
};
use crate::montecarlo::{
    chi2_band, compare_histogram, histogram, simulate, steady_state_reference, uniform_edges, Domain, Histogram,
    InitialPositions, McConfig,
};
use crate::pde::{self, Boundary, PdeGrid};
use crate::tau::TauProfile;

/// Tolerance on l1_rel for histogram comparisons.
pub const HISTOGRAM_L1: f64 = 0.03;
/// Significance of the two-sided chi-square band.
pub const CHI2_ALPHA: f64 = 0.001;

fn seed_of(cfg: &RunConfig) -> u64 {
    cfg.seed.unwrap_or(DEFAULT_SEED)
}

/// Gaussian w0 scaled so that v0 = τ w0 has unit mass for the two-region τ.
pub fn two_region_gaussian(center: f64, sigma: f64) -> Result<impl Fn(f64) -> f64 + Copy> {
    if !(center.is_finite() && sigma.is_finite() && sigma > 0.0) {
        return Err(invalid("init", "gaussian needs a finite center and sigma > 0"));
    }
    let left = Normal::new(center, sigma)
        .map_err(|e| invalid("init", e.to_string()))?
        .cdf(0.0);
    let scale = 1.0 / (left + 2.0 * (1.0 - left));
    let norm = scale / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    Ok(move |x: f64| {
        let z = (x - center) / sigma;
        let w = norm * (-0.5 * z * z).exp();
        if x < 0.0 {
            w
        } else {
            2.0 * w
        }
    })
}

// ---------------------------------------------------------------- lattice

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub step: usize,
    pub mass: f64,
    pub energy: f64,
    pub sup_w: f64,
    pub sup_l: f64,
    pub sup_q: f64,
}

pub fn diagnostics(step: usize, state: &ReducedState) -> Result<Diagnostics> {
    // zero padding leaves the quotients unchanged and admits one-cell rows
    let mut w = Vec::with_capacity(state.w.len() + 2);
    w.push(0.0);
    w.extend_from_slice(&state.w);
    w.push(0.0);
    let padded = ReducedState::new(state.eps, state.ell, state.start - 1, w)?;
    let q = difference_quotients(&padded)?;
    Ok(Diagnostics {
        step,
        mass: mass(state),
        energy: energy(state),
        sup_w: state.sup_abs(),
        sup_l: q.sup_l(),
        sup_q: q.sup_q(),
    })
}

#[derive(Clone, Debug)]
pub struct LatticeRun {
    /// Unit-scale time of `state`.
    pub t: f64,
    pub state: ReducedState,
    pub diagnostics: Vec<Diagnostics>,
}

pub fn lattice_initial(sec: &LatticeSection) -> Result<ReducedState> {
    let eps = sec.eps;
    match sec.init {
        InitialDensity::Delta { x } => {
            let j = cell_index(eps, x);
            if (node(eps, j) - x).abs() > 1e-9 * eps {
                return Err(invalid("lattice.init.x", format!("{x} is not a grid node for eps = {eps}")));
            }
            ReducedState::delta(eps, j)
        }
        InitialDensity::Gaussian { center, sigma } => {
            let v0 = two_region_gaussian(center, sigma)?;
            discretize_initial(v0, eps, (center - 10.0 * sigma, center + 10.0 * sigma))
        }
        InitialDensity::Greens { t_start, a } => {
            let r = mass_radius(t_start);
            discretize_initial(
                |x| greens_v_at(t_start, x, a).unwrap_or(f64::NAN),
                eps,
                (a.min(0.0) - r, a.max(0.0) + r),
            )
        }
        InitialDensity::SteadyState { .. } | InitialDensity::Random => Err(invalid(
            "lattice.init",
            "the lattice accepts delta, gaussian or greens initial data",
        )),
    }
}

pub fn run_lattice(sec: &LatticeSection) -> Result<LatticeRun> {
    if sec.raw_steps % 2 != 0 {
        return Err(invalid("lattice.raw_steps", "must be even"));
    }
    let ell = sec.raw_steps / 2;
    let initial = lattice_initial(sec)?;
    let rows = match sec.chain {
        ChainKind::Reduced => evolve(&initial, ell),
        ChainKind::Raw => {
            let raw = evolve_raw(&RawLatticeState::from_reduced(&initial)?, sec.raw_steps);
            reduce_from_raw(&raw, ell)?
        }
    };
    let diagnostics = rows
        .iter()
        .enumerate()
        .map(|(k, s)| diagnostics(k, s))
        .collect::<Result<Vec<_>>>()?;
    let state = if sec.parity_average && ell > 0 {
        parity_average(&rows[ell - 1], &rows[ell])
    } else {
        rows[ell].clone()
    };
    Ok(LatticeRun {
        t: lattice_time(sec.raw_steps, sec.eps)?,
        state,
        diagnostics,
    })
}

/// (Σ Δy |v - G|) / (Σ Δy G) and max |v - G| over the nodes of `state`.
pub fn lattice_vs_greens(state: &ReducedState, t: f64, a: f64) -> Result<(f64, f64)> {
    let (mut num, mut den, mut linf) = (0.0, 0.0, 0.0f64);
    for j in state.indices() {
        let y = node(state.eps, j);
        let dy = spacing(state.eps, j);
        let v = cell_tau(j) * state.get(j);
        let g = greens_v_at(t, y, a)?;
        num += dy * (v - g).abs();
        den += dy * g;
        linf = linf.max((v - g).abs());
    }
    Ok((num / den, linf))
}

pub fn cmd_lattice(cfg: &RunConfig, out: &Path) -> Result<ComparisonReport> {
    let sec = require("lattice", &cfg.lattice)?;
    let run = run_lattice(sec)?;
    let mut density = Table::new(csv::DENSITY);
    for j in run.state.indices() {
        let v = cell_tau(j) * run.state.get(j);
        density.row(&[run.t.into(), node(sec.eps, j).into(), v.into()]);
    }
    density.write(&out.join("density.csv"))?;
    let mut diag = Table::new(csv::DIAGNOSTICS);
    for d in &run.diagnostics {
        diag.row(&[
            d.step.into(),
            d.mass.into(),
            d.energy.into(),
            d.sup_w.into(),
            d.sup_l.into(),
            d.sup_q.into(),
        ]);
    }
    diag.write(&out.join("diagnostics.csv"))?;
    let mut report = ComparisonReport::default();
    let drift = run
        .diagnostics
        .iter()
        .map(|d| (d.mass - run.diagnostics[0].mass).abs())
        .fold(0.0, f64::max);
    report.push(Comparison::at_most("lattice mass drift", Metric::AbsError, drift, 1e-12));
    if sec.compare_greens && run.t > 0.0 {
        if let InitialDensity::Delta { x } = sec.init {
            let (l1, linf) = lattice_vs_greens(&run.state, run.t, x)?;
            report.push(Comparison::at_most("lattice vs greens", Metric::L1Rel, l1, 0.02));
            report.push(Comparison::at_most("lattice vs greens", Metric::Linf, linf, f64::INFINITY));
        }
    }
    report.write(&out.join("report.json"))?;
    Ok(report)
}

// ---------------------------------------------------------------- greens

/// Kernel samples on the multiples of `dx` in [x_min, x_max]; x = 0 appears
/// once per side.
pub fn kernel_rows(sec: &GreensSection) -> Result<Vec<(f64, Side, f64)>> {
    if !(sec.dx.is_finite() && sec.dx > 0.0 && sec.x_min < sec.x_max) {
        return Err(invalid("greens", "need dx > 0 and x_min < x_max"));
    }
    let k_lo = (sec.x_min / sec.dx - 1e-9).ceil() as i64;
    let k_hi = (sec.x_max / sec.dx + 1e-9).floor() as i64;
    let mut rows = Vec::new();
    for k in k_lo..=k_hi {
        let x = k as f64 * sec.dx;
        let q = GreensQuery::new(sec.t, x, sec.a);
        match k.signum() {
            -1 => rows.push((x, Side::Left, greens_v(&q)?)),
            1 => rows.push((x, Side::Right, greens_v(&q)?)),
            _ => {
                rows.push((0.0, Side::Left, greens_v(&q.with_side(Side::Left))?));
                rows.push((0.0, Side::Right, greens_v(&q.with_side(Side::Right))?));
            }
        }
    }
    Ok(rows)
}

/// Trapezoid mass of the kernel rows, using one-sided values at x = 0.
pub fn kernel_mass(rows: &[(f64, Side, f64)]) -> f64 {
    rows.windows(2)
        .filter(|w| w[1].0 > w[0].0)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].2 + w[1].2))
        .sum()
}

pub fn cmd_greens(cfg: &RunConfig, out: &Path) -> Result<ComparisonReport> {
    let sec = require("greens", &cfg.greens)?;
    let rows = kernel_rows(sec)?;
    let mut table = Table::new(csv::KERNEL);
    for (x, side, g) in &rows {
        table.row(&[(*x).into(), side.as_str().into(), (*g).into()]);
    }
    table.write(&out.join("kernel.csv"))?;
    let mut report = ComparisonReport::default();
    let m = kernel_mass(&rows);
    report.push(Comparison::at_most("kernel trapezoid mass", Metric::AbsError, (m - 1.0).abs(), 1e-3));
    report.write(&out.join("report.json"))?;
    Ok(report)
}

// ---------------------------------------------------------------- monte carlo

#[derive(Clone, Debug)]
pub struct McRun {
    pub config: McConfig,
    pub histogram: Histogram,
    /// NaN where no reference applies.
    pub expected: Vec<f64>,
    pub elapsed: Duration,
}

/// Expected counts: the stationary profile on a periodic domain, the
/// two-region kernel for a point source on the line, none otherwise.
pub fn mc_reference(cfg: &McConfig, edges: &[f64]) -> Result<Option<Vec<f64>>> {
    let n = cfg.n_particles as u64;
    match (cfg.domain, &cfg.tau, cfg.init) {
        (Domain::Periodic { .. }, tau, _) => Ok(Some(steady_state_reference(tau, edges, n)?)),
        (Domain::Line, TauProfile::TwoRegion, InitialPositions::Point { a }) if cfg.t_phys > 0.0 => edges
            .windows(2)
            .map(|w| Ok(n as f64 * greens_cell_integral(cfg.t_phys, a, w[0], w[1])?))
            .collect::<Result<Vec<_>>>()
            .map(Some),
        _ => Ok(None),
    }
}

pub fn run_mc_config(cfg: &McConfig, edges: &[f64]) -> Result<McRun> {
    let start = Instant::now();
    let ens = simulate(cfg)?;
    let elapsed = start.elapsed();
    let histogram = histogram(&ens.positions, edges)?;
    let expected = mc_reference(cfg, edges)?.unwrap_or_else(|| vec![f64::NAN; edges.len() - 1]);
    Ok(McRun {
        config: cfg.clone(),
        histogram,
        expected,
        elapsed,
    })
}

pub fn mc_configs(sec: &McSection, seed: u64) -> Vec<McConfig> {
    let mut out = Vec::new();
    for &t in &sec.t_phys {
        for &b in &sec.b {
            out.push(McConfig {
                n_particles: sec.n_particles,
                dx: sec.dx,
                t_phys: t,
                tau: sec.tau.clone(),
                b,
                domain: sec.domain,
                wrap_policy: sec.wrap_policy,
                init: sec.init,
                seed,
            });
        }
    }
    out
}

/// l1_rel and chi-square lines of one histogram against its reference.
pub fn histogram_checks(label: &str, hist: &Histogram, expected: &[f64]) -> Result<Vec<Comparison>> {
    let cmp = compare_histogram(hist, expected)?;
    let (lo, hi) = chi2_band(cmp.dof, CHI2_ALPHA)?;
    Ok(vec![
        Comparison::at_most(label, Metric::L1Rel, cmp.l1_rel, HISTOGRAM_L1),
        Comparison::within(label, Metric::Chi2, cmp.chi2, lo, hi),
    ])
}

pub fn cmd_mc(cfg: &RunConfig, out: &Path) -> Result<ComparisonReport> {
    let sec = require("mc", &cfg.mc)?;
    if sec.t_phys.is_empty() || sec.b.is_empty() {
        return Err(invalid("mc", "t_phys and b need at least one value"));
    }
    let edges = uniform_edges(sec.bins.lo, sec.bins.hi, sec.bins.width)?;
    let configs = mc_configs(sec, seed_of(cfg));
    let single = configs.len() == 1;
    let mut report = ComparisonReport::default();
    for c in &configs {
        let run = run_mc_config(c, &edges)?;
        let name = if single {
            "histogram.csv".to_string()
        } else {
            format!("histogram_t{}_b{}.csv", c.t_phys, c.b)
        };
        let mut table = Table::new(csv::HISTOGRAM);
        for (k, w) in edges.windows(2).enumerate() {
            table.row(&[
                w[0].into(),
                w[1].into(),
                run.histogram.counts[k].into(),
                run.expected[k].into(),
            ]);
        }
        table.write(&out.join(&name))?;
        if run.expected.iter().all(|e| e.is_finite()) {
            let reference = match c.domain {
                Domain::Periodic { .. } => "steady state",
                Domain::Line => "greens",
            };
            let label = format!("mc t={} b={} vs {reference}", c.t_phys, c.b);
            report.extend(histogram_checks(&label, &run.histogram, &run.expected)?);
        }
        report.push(Comparison::at_most(
            format!("mc t={} b={} runtime", c.t_phys, c.b),
            Metric::Seconds,
            run.elapsed.as_secs_f64(),
            60.0,
        ));
    }
    report.write(&out.join("report.json"))?;
    Ok(report)
}

// ---------------------------------------------------------------- pde

#[derive(Clone, Debug)]
pub struct PdeRun {
    pub grid: PdeGrid,
    pub x: Vec<f64>,
    /// Time of `v0`.
    pub t0: f64,
    pub v0: Vec<f64>,
    pub v: Vec<f64>,
}

pub fn pde_initial(sec: &PdeSection, grid: &PdeGrid, seed: u64) -> Result<(f64, Vec<f64>)> {
    let x = grid.centers();
    match sec.init {
        InitialDensity::Gaussian { center, sigma } => {
            if !(sigma > 0.0) {
                return Err(invalid("pde.init.sigma", "must be > 0"));
            }
            let raw: Vec<f64> = x
                .iter()
                .map(|&x| sec.tau.eval(x) * (-0.5 * ((x - center) / sigma).powi(2)).exp())
                .collect();
            let m = pde::mass(&raw, grid.h);
            Ok((0.0, raw.iter().map(|v| v / m).collect()))
        }
        InitialDensity::Greens { t_start, a } => {
            if sec.tau != TauProfile::TwoRegion {
                return Err(invalid("pde.init", "greens initial data needs the two_region profile"));
            }
            let v = x.iter().map(|&x| greens_v_at(t_start, x, a)).collect::<Result<Vec<_>>>()?;
            Ok((t_start, v))
        }
        InitialDensity::SteadyState { mass } => Ok((0.0, pde::steady_state(&sec.tau, mass, grid)?)),
        InitialDensity::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0.0, x.iter().map(|_| rng.random::<f64>()).collect()))
        }
        InitialDensity::Delta { .. } => Err(invalid("pde.init", "delta data is not a grid function")),
    }
}

pub fn run_pde(sec: &PdeSection, seed: u64) -> Result<PdeRun> {
    let mut grid = PdeGrid::new(sec.x_min, sec.x_max, sec.h, sec.bc, sec.d, &sec.tau)?;
    if let Some(k) = sec.k {
        grid = grid.with_step(k, &sec.tau)?;
    }
    let (t0, v0) = pde_initial(sec, &grid, seed)?;
    if sec.t_end < t0 {
        return Err(invalid("pde.t_end", "must not precede the initial time"));
    }
    let v = pde::solve(&sec.tau, &v0, &grid, sec.t_end - t0)?;
    Ok(PdeRun {
        x: grid.centers(),
        grid,
        t0,
        v0,
        v,
    })
}

pub fn cmd_pde(cfg: &RunConfig, out: &Path) -> Result<ComparisonReport> {
    let sec = require("pde", &cfg.pde)?;
    let run = run_pde(sec, seed_of(cfg))?;
    let mut table = Table::new(csv::DENSITY);
    for (t, v) in [(run.t0, &run.v0), (sec.t_end, &run.v)] {
        for (x, v) in run.x.iter().zip(v.iter()) {
            table.row(&[t.into(), (*x).into(), (*v).into()]);
        }
    }
    table.write(&out.join("density.csv"))?;
    let mut report = ComparisonReport::default();
    let m0 = pde::mass(&run.v0, run.grid.h);
    let m1 = pde::mass(&run.v, run.grid.h);
    if sec.bc != Boundary::TruncatedZero {
        report.push(Comparison::at_most("pde mass", Metric::AbsError, (m1 - m0).abs(), 1e-12 * m0.max(1.0)));
        let steady = pde::steady_state(&sec.tau, m0, &run.grid)?;
        report.push(Comparison::at_most(
            "pde vs steady state",
            Metric::L1Rel,
            pde::l1_rel(&run.v, &steady),
            f64::INFINITY,
        ));
    }
    if let InitialDensity::Greens { a, .. } = sec.init {
        let exact = run
            .x
            .iter()
            .map(|&x| greens_v_at(sec.t_end, x, a))
            .collect::<Result<Vec<_>>>()?;
        report.push(Comparison::at_most("pde vs greens", Metric::L1Rel, pde::l1_rel(&run.v, &exact), 1e-3));
    }
    report.write(&out.join("report.json"))?;
    Ok(report)
}

// ---------------------------------------------------------------- convergence

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub l1_rel: f64,
    pub linf: f64,
}

/// Lattice density at each ε against a fine finite-difference reference,
/// both started from v0 = τ w0 with Gaussian w0.
pub fn run_convergence(sec: &ConvergeSection) -> Result<Vec<ConvergenceRow>> {
    let tau = TauProfile::two_region();
    let v0 = two_region_gaussian(sec.center, sec.sigma)?;
    let w = sec.half_width;
    let grid = PdeGrid::new(-w, w, sec.oracle_h, Boundary::TruncatedZero, 1.0, &tau)?;
    let x = grid.centers();
    let init: Vec<f64> = x.iter().map(|&x| v0(x)).collect();
    let v_ref = pde::solve(&tau, &init, &grid, sec.t)?;
    let w_ref: Vec<f64> = v_ref.iter().zip(&x).map(|(v, &x)| v / tau.eval(x)).collect();
    // w is continuous, so interpolate it and multiply by τ afterwards
    let w_at = |y: f64| -> f64 {
        let s = ((y - x[0]) / grid.h).clamp(0.0, (x.len() - 1) as f64);
        let i = (s.floor() as usize).min(x.len() - 2);
        let f = s - i as f64;
        w_ref[i] * (1.0 - f) + w_ref[i + 1] * f
    };
    let window = w - 1.0;
    let mut rows = Vec::with_capacity(sec.eps.len());
    for &eps in &sec.eps {
        let steps = sec.t / (eps * eps);
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return Err(invalid("converge.eps", format!("t / eps^2 is not an integer for eps = {eps}")));
        }
        let initial = discretize_initial(v0, eps, (sec.center - 10.0 * sec.sigma, sec.center + 10.0 * sec.sigma))?;
        let traj = evolve(&initial, steps.round() as usize);
        let last = traj.last().expect("non-empty");
        let (mut num, mut den, mut linf) = (0.0, 0.0, 0.0f64);
        for j in last.indices() {
            let y = node(eps, j);
            if y.abs() >= window {
                continue;
            }
            let dy = spacing(eps, j);
            let v = cell_tau(j) * last.get(j);
            let r = tau.eval(y) * w_at(y);
            num += dy * (v - r).abs();
            den += dy * r;
            linf = linf.max((v - r).abs());
        }
        rows.push(ConvergenceRow {
            eps,
            l1_rel: num / den,
            linf,
        });
    }
    Ok(rows)
}

/// One line per consecutive pair: the finer l1_rel must be strictly smaller.
pub fn convergence_checks(rows: &[ConvergenceRow]) -> Vec<Comparison> {
    rows.windows(2)
        .map(|p| {
            let mut c = Comparison::at_most(
                format!("l1_rel decreases eps {} -> {}", p[0].eps, p[1].eps),
                Metric::L1Rel,
                p[1].l1_rel,
                p[0].l1_rel,
            );
            c.pass = p[1].l1_rel < p[0].l1_rel;
            c
        })
        .collect()
}

pub fn cmd_converge(cfg: &RunConfig, out: &Path) -> Result<ComparisonReport> {
    let sec = require("converge", &cfg.converge)?;
    let rows = run_convergence(sec)?;
    let mut table = Table::new(csv::CONVERGENCE);
    for r in &rows {
        table.row(&[r.eps.into(), r.l1_rel.into(), r.linf.into()]);
    }
    table.write(&out.join("convergence.csv"))?;
    let mut report = ComparisonReport::default();
    report.extend(convergence_checks(&rows));
    report.write(&out.join("report.json"))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_has_unit_mass() {
        let v0 = two_region_gaussian(0.3, 0.4).unwrap();
        let m = crate::quadrature::integrate_pieces(v0, &[-6.0, 0.0, 6.0], Default::default()).unwrap();
        assert!((m.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn zero_steps_reproduce_initial_data() {
        let sec = LatticeSection {
            eps: 0.1,
            raw_steps: 0,
            init: InitialDensity::Gaussian { center: 0.0, sigma: 0.5 },
            chain: ChainKind::Reduced,
            parity_average: true,
            compare_greens: false,
        };
        let run = run_lattice(&sec).unwrap();
        assert_eq!(run.state, lattice_initial(&sec).unwrap());
        assert_eq!(run.t, 0.0);
    }

    #[test]
    fn raw_and_reduced_routes_agree() {
        let mut sec = LatticeSection {
            eps: 0.1,
            raw_steps: 40,
            init: InitialDensity::Delta { x: -0.4 },
            chain: ChainKind::Reduced,
            parity_average: false,
            compare_greens: false,
        };
        let a = run_lattice(&sec).unwrap();
        sec.chain = ChainKind::Raw;
        let b = run_lattice(&sec).unwrap();
        for j in a.state.indices() {
            assert!((a.state.get(j) - b.state.get(j)).abs() < 1e-13);
        }
    }

    #[test]
    fn delta_off_grid_rejected() {
        let sec = LatticeSection {
            eps: 0.1,
            raw_steps: 2,
            init: InitialDensity::Delta { x: -0.1 },
            chain: ChainKind::Reduced,
            parity_average: false,
            compare_greens: false,
        };
        assert!(run_lattice(&sec).is_err());
    }

    #[test]
    fn kernel_grid_is_symmetric_with_both_sides_at_zero() {
        let sec = GreensSection {
            t: 0.5,
            a: 0.0,
            x_min: -3.0,
            x_max: 3.0,
            dx: 0.5,
        };
        let rows = kernel_rows(&sec).unwrap();
        assert_eq!(rows.len(), 14);
        let zero: Vec<_> = rows.iter().filter(|r| r.0 == 0.0).collect();
        assert_eq!(zero.len(), 2);
        assert!((zero[1].2 / zero[0].2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_mass_near_one() {
        let sec = GreensSection {
            t: 0.5,
            a: 0.0,
            x_min: -8.0,
            x_max: 8.0,
            dx: 0.01,
        };
        assert!((kernel_mass(&kernel_rows(&sec).unwrap()) - 1.0).abs() < 1e-4);
    }
}
