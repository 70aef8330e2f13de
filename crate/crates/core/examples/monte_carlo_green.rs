//! Particles released at the interface, histogrammed against the exact cell
//! integrals of the kernel.

use sojourn::greens::greens_cell_integral;
use sojourn::montecarlo::{
    chi2_band, compare_histogram, histogram, simulate, uniform_edges, Domain, InitialPositions, McConfig, WrapPolicy,
};
use sojourn::TauProfile;

fn main() -> sojourn::Result<()> {
    let cfg = McConfig {
        n_particles: 200_000,
        dx: 0.05,
        t_phys: 0.5,
        tau: TauProfile::TwoRegion,
        b: 1.0,
        domain: Domain::Line,
        wrap_policy: WrapPolicy::default(),
        init: InitialPositions::Point { a: 0.0 },
        seed: 12345,
    };
    let ens = simulate(&cfg)?;
    let edges = uniform_edges(-4.0, 4.0, 0.2)?;
    let hist = histogram(&ens.positions, &edges)?;
    let expected = edges
        .windows(2)
        .map(|w| Ok(cfg.n_particles as f64 * greens_cell_integral(cfg.t_phys, 0.0, w[0], w[1])?))
        .collect::<sojourn::Result<Vec<_>>>()?;
    let cmp = compare_histogram(&hist, &expected)?;
    let (lo, hi) = chi2_band(cmp.dof, 0.001)?;
    println!("steps consumed: {:.0} of budget {:.0}", ens.consumed.iter().sum::<f64>() / ens.consumed.len() as f64, cfg.budget());
    println!("l1_rel = {:.4}, chi2 = {:.1} (dof {}, band [{lo:.1}, {hi:.1}])", cmp.l1_rel, cmp.chi2, cmp.dof);
    Ok(())
}
