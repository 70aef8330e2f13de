//! The acceptance criteria, one function each. Every criterion returns one or
//! more [`Comparison`] lines whose names start with the criterion name.

use std::f64::consts::{PI, SQRT_2};
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::commands::{
    convergence_checks, diagnostics, histogram_checks, lattice_vs_greens, run_convergence, run_mc_config,
    two_region_gaussian,
};
use super::config::{ConvergeSection, RunConfig};
use super::report::{Comparison, ComparisonReport, Metric};
use super::{lattice_time, DEFAULT_SEED};
use crate::error::{invalid, Result};
use crate::greens::{greens_mass, greens_v_at, interface_c1_defect, pde_residual};
use crate::lattice::{
    discretize_initial, evolve_raw, mass, parity_average, quotient_identity_defect, reduce_from_raw,
    step_reduced, step_reduced_with, RawLatticeState, ReducedState, ReducedStencil,
};
use crate::montecarlo::{
    band_exceedance_allowance, bins_outside_band, noise_l1, region_fractions, simulate, simulate_with_workers,
    steady_state_reference, uniform_edges, Domain, InitialPositions, McConfig, WrapPolicy,
};
use crate::pde::{self, Boundary, PdeGrid};
use crate::tau::TauProfile;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Stencil checked against the raw chain by `chain_equivalence`.
    pub stencil: ReducedStencil,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            stencil: ReducedStencil::EXACT,
        }
    }
}

pub const CRITERIA: [&str; 12] = [
    "mass_conservation",
    "chain_equivalence",
    "quotient_identity",
    "max_principles",
    "fig1_lattice",
    "greens_self_checks",
    "fig2_mc_greens",
    "fig3_staircase",
    "fig4_reference_point",
    "eps_convergence",
    "mc_determinism",
    "pde_oracle",
];

pub fn run_criterion(name: &str, opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    match name {
        "mass_conservation" => mass_conservation(opts),
        "chain_equivalence" => chain_equivalence(opts),
        "quotient_identity" => quotient_identity(opts),
        "max_principles" => max_principles(opts),
        "fig1_lattice" => fig1_lattice(),
        "greens_self_checks" => greens_self_checks(),
        "fig2_mc_greens" => fig2_mc_greens(opts),
        "fig3_staircase" => fig3_staircase(opts),
        "fig4_reference_point" => fig4_reference_point(opts),
        "eps_convergence" => eps_convergence(),
        "mc_determinism" => mc_determinism(opts),
        "pde_oracle" => pde_oracle(opts),
        other => Err(invalid("criterion", format!("unknown criterion `{other}`"))),
    }
}

/// [`run_criterion`] with errors turned into a failing line.
pub fn run_named(name: &str, opts: &VerifyOptions) -> Vec<Comparison> {
    run_criterion(name, opts).unwrap_or_else(|e| vec![Comparison::holds(format!("{name}: error: {e}"), false)])
}

pub fn cmd_verify(cfg: &RunConfig, out: &Path) -> Result<ComparisonReport> {
    let section = cfg.verify.clone().unwrap_or_default();
    let opts = VerifyOptions {
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
        stencil: section.stencil.unwrap_or(ReducedStencil::EXACT),
    };
    let names: Vec<String> = match section.only {
        Some(names) => names,
        None => CRITERIA.iter().map(|s| s.to_string()).collect(),
    };
    for n in &names {
        if !CRITERIA.contains(&n.as_str()) {
            return Err(invalid("verify.only", format!("unknown criterion `{n}`")));
        }
    }
    let mut report = ComparisonReport::default();
    for n in &names {
        for c in run_named(n, &opts) {
            println!("{}", c.line());
            report.push(c);
        }
    }
    report.write(&out.join("report.json"))?;
    Ok(report)
}

fn rng(opts: &VerifyOptions, salt: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(opts.seed);
    r.set_stream(salt);
    r
}

/// Nonnegative row of up to 25 cells starting in [-25, 10), entries in [0, 1).
fn random_row(rng: &mut ChaCha8Rng, eps: f64) -> Result<ReducedState> {
    let start = rng.random_range(-25..10);
    let len = rng.random_range(1..=25);
    let w = (0..len).map(|_| rng.random::<f64>()).collect();
    ReducedState::new(eps, 0, start, w)
}

fn mass_conservation(_opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let eps = 0.05;
    let v0 = two_region_gaussian(0.0, 0.5)?;
    let mut state = discretize_initial(v0, eps, (-5.0, 5.0))?;
    let m0 = mass(&state);
    state.w.iter_mut().for_each(|w| *w /= m0);
    let mut worst = (mass(&state) - 1.0).abs();
    for _ in 0..10_000 {
        state = step_reduced(&state);
        worst = worst.max((mass(&state) - 1.0).abs());
    }
    Ok(vec![Comparison::at_most(
        "mass_conservation: max |mass - 1| over 1e4 steps",
        Metric::AbsError,
        worst,
        1e-12,
    )])
}

fn chain_equivalence(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let eps = 0.05;
    let steps = 100;
    let mut r = rng(opts, 2);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let initial = random_row(&mut r, eps)?;
        let raw = evolve_raw(&RawLatticeState::from_reduced(&initial)?, 2 * steps);
        let sampled = reduce_from_raw(&raw, steps)?;
        let mut direct = initial.clone();
        for row in sampled.iter().skip(1) {
            direct = step_reduced_with(&direct, &opts.stencil);
            let lo = direct.start.min(row.start);
            let hi = direct.end().max(row.end());
            for j in lo..hi {
                worst = worst.max((direct.get(j) - row.get(j)).abs());
            }
        }
    }
    Ok(vec![Comparison::at_most(
        "chain_equivalence: max |raw - reduced| (200 inits x 100 steps)",
        Metric::Linf,
        worst,
        1e-14,
    )])
}

fn quotient_identity(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let eps = 1.0 / 16.0;
    let mut r = rng(opts, 3);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut state = random_row(&mut r, eps)?;
        if state.w.len() < 3 {
            state.w.resize(3, 0.0);
        }
        for _ in 0..100 {
            let next = step_reduced(&state);
            worst = worst.max(quotient_identity_defect(&state, &next)?);
            state = next;
        }
    }
    Ok(vec![Comparison::at_most(
        "quotient_identity: max |(w_next - w)/eps^2 - Q|",
        Metric::Linf,
        worst,
        1e-13,
    )])
}

fn max_principles(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    const SLACK: f64 = 1e-12;
    let eps = 0.05;
    let mut r = rng(opts, 4);
    let mut violations = [0usize; 4];
    for _ in 0..50 {
        let mut state = random_row(&mut r, eps)?;
        let mut prev = diagnostics(0, &state)?;
        for step in 1..=1000 {
            state = step_reduced(&state);
            let cur = diagnostics(step, &state)?;
            let pairs = [
                (cur.sup_w, prev.sup_w),
                (cur.sup_l, prev.sup_l),
                (cur.sup_q, prev.sup_q),
                (cur.energy, prev.energy),
            ];
            for (k, (c, p)) in pairs.into_iter().enumerate() {
                if c > p * (1.0 + SLACK) {
                    violations[k] += 1;
                }
            }
            prev = cur;
        }
    }
    let names = ["sup_w", "sup_L", "sup_Q", "energy"];
    Ok(names
        .iter()
        .zip(violations)
        .map(|(n, v)| {
            Comparison::at_most(
                format!("max_principles: {n} increases (50 inits x 1e3 steps)"),
                Metric::Count,
                v as f64,
                0.0,
            )
        })
        .collect())
}

/// Raw chain from a unit mass at 0, parity-averaged, against G(t, ·; 0).
fn lattice_delta_run(eps: f64, raw_steps: usize) -> Result<(f64, f64)> {
    let ell = raw_steps / 2;
    let raw = evolve_raw(&RawLatticeState::delta(eps, 0)?, raw_steps);
    let rows = reduce_from_raw(&raw, ell)?;
    let avg = parity_average(&rows[ell - 1], &rows[ell]);
    lattice_vs_greens(&avg, lattice_time(raw_steps, eps)?, 0.0)
}

fn fig1_lattice() -> Result<Vec<Comparison>> {
    let start = Instant::now();
    let (l1, _) = lattice_delta_run(0.05, 400)?;
    let seconds = start.elapsed().as_secs_f64();
    let (l1_coarse, _) = lattice_delta_run(0.1, 100)?;
    Ok(vec![
        Comparison::at_most("fig1_lattice: eps=0.05, 400 steps vs G(0.5)", Metric::L1Rel, l1, 0.02),
        Comparison::at_most("fig1_lattice: eps=0.05 runtime", Metric::Seconds, seconds, 1.0),
        Comparison::at_most("fig1_lattice: eps=0.1, 100 steps vs G(0.5)", Metric::L1Rel, l1_coarse, 0.02),
    ])
}

fn greens_self_checks() -> Result<Vec<Comparison>> {
    let mut mass_err = 0.0f64;
    let mut c1 = 0.0f64;
    for t in [0.1, 0.5, 1.0] {
        for a in [-1.0, 0.0, 1.0] {
            mass_err = mass_err.max((greens_mass(t, a)? - 1.0).abs());
            c1 = c1.max(interface_c1_defect(t, a)?);
        }
    }
    let mut residual = 0.0f64;
    let mut points = 0;
    for t in [0.3, 0.7] {
        for a in [0.0, 1.0] {
            for y in [-1.5, -0.5, 0.4, 1.2, 2.0] {
                residual = residual.max(pde_residual(t, y, a, 1e-3)?);
                points += 1;
            }
        }
    }
    Ok(vec![
        Comparison::at_most("greens_self_checks: max |mass - 1|", Metric::AbsError, mass_err, 1e-6),
        Comparison::at_most(
            format!("greens_self_checks: max PDE residual ({points} points)"),
            Metric::AbsError,
            residual,
            1e-4,
        ),
        Comparison::at_most("greens_self_checks: max C1 interface defect", Metric::AbsError, c1, 1e-5),
    ])
}

fn fig2_config(seed: u64, dx: f64) -> McConfig {
    McConfig {
        n_particles: 1_000_000,
        dx,
        t_phys: 0.5,
        tau: TauProfile::two_region(),
        b: 1.0,
        domain: Domain::Line,
        wrap_policy: WrapPolicy::WrapBeforeCost,
        init: InitialPositions::Point { a: 0.0 },
        seed,
    }
}

fn fig2_mc_greens(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let edges = uniform_edges(-5.0, 5.0, 0.1)?;
    let mut out = Vec::new();
    for (dx, label) in [(0.05, "dx=0.05"), (0.1, "dx=0.1")] {
        let run = run_mc_config(&fig2_config(opts.seed, dx), &edges)?;
        out.extend(histogram_checks(&format!("fig2_mc_greens: {label}"), &run.histogram, &run.expected)?);
        if dx == 0.05 {
            out.push(Comparison::at_most(
                "fig2_mc_greens: dx=0.05 runtime",
                Metric::Seconds,
                run.elapsed.as_secs_f64(),
                30.0,
            ));
        }
    }
    Ok(out)
}

fn fig3_staircase(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let cfg = McConfig {
        n_particles: 1_000_000,
        dx: 0.1,
        t_phys: 5.0,
        tau: TauProfile::unit_staircase(),
        b: 1.0,
        domain: Domain::Periodic { length: 4.0 },
        wrap_policy: WrapPolicy::WrapBeforeCost,
        init: InitialPositions::Uniform,
        seed: opts.seed,
    };
    let ens = simulate(&cfg)?;
    let fractions = region_fractions(&ens.positions, &[0.0, 1.0, 2.0, 3.0, 4.0])?;
    Ok(fractions
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let target = (k + 1) as f64 / 10.0;
            Comparison::at_most(
                format!("fig3_staircase: region {} fraction {f:.4} vs {target}", k + 1),
                Metric::AbsError,
                (f - target).abs(),
                0.01,
            )
        })
        .collect())
}

fn fig4_reference_point(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let length = 2.0 * PI;
    let edges = uniform_edges(0.0, length, 0.2)?;
    let n = 1_000_000u64;
    let tau = TauProfile::half_sine();
    let expected = steady_state_reference(&tau, &edges, n)?;
    let allowance = band_exceedance_allowance(expected.len(), 3.0, 0.001)?;
    let mut out = Vec::new();
    let mut hists = Vec::new();
    for b in [0.0, 0.5, 1.0] {
        let cfg = McConfig {
            n_particles: n as usize,
            dx: 0.2,
            t_phys: 5.0,
            tau: tau.clone(),
            b,
            domain: Domain::Periodic { length },
            wrap_policy: WrapPolicy::WrapAfterCost,
            init: InitialPositions::Uniform,
            seed: opts.seed,
        };
        let run = run_mc_config(&cfg, &edges)?;
        let outside = bins_outside_band(&run.histogram, &expected, n, 3.0)?;
        out.push(Comparison::at_most(
            format!("fig4_reference_point: b={b} bins outside 3 sigma ({} bins)", expected.len()),
            Metric::Count,
            outside as f64,
            allowance as f64,
        ));
        hists.push((b, run.histogram));
    }
    let noise = SQRT_2 * noise_l1(&expected, n);
    for i in 0..hists.len() {
        for j in i + 1..hists.len() {
            let diff: f64 = hists[i]
                .1
                .counts
                .iter()
                .zip(&hists[j].1.counts)
                .map(|(a, b)| (*a as f64 - *b as f64).abs())
                .sum::<f64>()
                / n as f64;
            out.push(Comparison::at_most(
                format!("fig4_reference_point: l1 difference b={} vs b={}", hists[i].0, hists[j].0),
                Metric::L1Rel,
                diff,
                3.0 * noise,
            ));
        }
    }
    Ok(out)
}

fn eps_convergence() -> Result<Vec<Comparison>> {
    let rows = run_convergence(&ConvergeSection {
        eps: vec![0.2, 0.1, 0.05],
        t: 1.0,
        center: 0.0,
        sigma: 0.5,
        oracle_h: 0.01,
        half_width: 12.0,
    })?;
    Ok(convergence_checks(&rows)
        .into_iter()
        .map(|mut c| {
            c.name = format!("eps_convergence: {}", c.name);
            c
        })
        .collect())
}

fn mc_determinism(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let cfg = fig2_config(opts.seed, 0.05);
    let base = simulate_with_workers(&cfg, 1)?;
    let mut out = Vec::new();
    for workers in [4, 16] {
        let other = simulate_with_workers(&cfg, workers)?;
        let same = other.positions == base.positions && other.steps == base.steps && other.consumed == base.consumed;
        out.push(Comparison::holds(
            format!("mc_determinism: {workers} workers identical to 1 worker"),
            same,
        ));
    }
    Ok(out)
}

fn heat_kernel(x: f64, t: f64) -> f64 {
    (-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
}

/// Relative L1 errors of the finite-difference solution from `exact(t0)` to
/// `exact(t1)` for each spacing.
fn refinement<F: Fn(f64, f64) -> Result<f64>>(
    tau: &TauProfile,
    half_width: f64,
    spacings: &[f64],
    t0: f64,
    t1: f64,
    exact: F,
) -> Result<Vec<f64>> {
    spacings
        .iter()
        .map(|&h| {
            let grid = PdeGrid::new(-half_width, half_width, h, Boundary::TruncatedZero, 1.0, tau)?;
            let x = grid.centers();
            let v0 = x.iter().map(|&x| exact(x, t0)).collect::<Result<Vec<_>>>()?;
            let v = pde::solve(tau, &v0, &grid, t1 - t0)?;
            let e = x.iter().map(|&x| exact(x, t1)).collect::<Result<Vec<_>>>()?;
            Ok(pde::l1_rel(&v, &e))
        })
        .collect()
}

fn order_lines(label: &str, spacings: &[f64], errors: &[f64], finest: f64) -> Vec<Comparison> {
    let mut out: Vec<Comparison> = errors
        .windows(2)
        .zip(spacings.windows(2))
        .map(|(e, h)| {
            let order = (e[0] / e[1]).ln() / (h[0] / h[1]).ln();
            Comparison::within(
                format!("pde_oracle: {label} order h={} -> {}", h[0], h[1]),
                Metric::Order,
                order,
                1.7,
                f64::INFINITY,
            )
        })
        .collect();
    out.push(Comparison::at_most(
        format!("pde_oracle: {label} error at h={}", spacings[spacings.len() - 1]),
        Metric::L1Rel,
        errors[errors.len() - 1],
        finest,
    ));
    out
}

fn pde_oracle(opts: &VerifyOptions) -> Result<Vec<Comparison>> {
    let spacings = [0.04, 0.02, 0.01];
    let mut out = Vec::new();

    let one = TauProfile::constant(1.0)?;
    let heat = refinement(&one, 8.0, &spacings, 0.1, 0.5, |x, t| Ok(heat_kernel(x, t)))?;
    out.extend(order_lines("heat kernel", &spacings, &heat, 1e-4));

    let mut fixed = 0.0f64;
    for (tau, length, h) in [
        (TauProfile::unit_staircase(), 4.0, 0.05),
        (TauProfile::half_sine(), 2.0 * PI, 2.0 * PI / 128.0),
    ] {
        let grid = PdeGrid::new(0.0, length, h, Boundary::Periodic, 1.0, &tau)?;
        let v0 = pde::steady_state(&tau, 1.0, &grid)?;
        let v = pde::solve(&tau, &v0, &grid, 1.0)?;
        fixed = fixed.max(v.iter().zip(&v0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    out.push(Comparison::at_most("pde_oracle: C tau fixed point", Metric::Linf, fixed, 1e-13));

    let two = TauProfile::two_region();
    let kernel = refinement(&two, 12.0, &spacings, 0.05, 0.5, |x, t| greens_v_at(t, x, 0.0))?;
    out.extend(order_lines("two_region vs greens", &spacings, &kernel, 1e-4));

    let tau = TauProfile::unit_staircase();
    let grid = PdeGrid::new(0.0, 4.0, 0.05, Boundary::Periodic, 1.0, &tau)?;
    let mut r = rng(opts, 12);
    let v0: Vec<f64> = grid.centers().iter().map(|_| r.random::<f64>()).collect();
    let m0 = pde::mass(&v0, grid.h);
    let steady = pde::steady_state(&tau, m0, &grid)?;
    let mut samples = Vec::new();
    let mut next_mark = 1.0;
    let v = pde::solve_observed(&tau, &v0, &grid, 50.0, |t, v| {
        if t + 1e-9 >= next_mark {
            samples.push(pde::l1_rel(v, &steady));
            next_mark += 1.0;
        }
    })?;
    let increases = samples.windows(2).filter(|p| p[1] > p[0]).count();
    out.push(Comparison::at_most(
        "pde_oracle: random start to C tau at t=50",
        Metric::L1Rel,
        pde::l1_rel(&v, &steady),
        1e-6,
    ));
    out.push(Comparison::at_most(
        "pde_oracle: l1 increases between unit times after t=1",
        Metric::Count,
        increases as f64,
        0.0,
    ));
    out.push(Comparison::at_most(
        "pde_oracle: periodic mass drift",
        Metric::AbsError,
        (pde::mass(&v, grid.h) - m0).abs(),
        1e-12 * m0,
    ));
    Ok(out)
}
