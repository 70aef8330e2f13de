//! A uniform start on a periodic staircase relaxes to occupation fractions
//! proportional to the local sojourn time.

use sojourn::montecarlo::{region_fractions, simulate, Domain, InitialPositions, McConfig, WrapPolicy};
use sojourn::TauProfile;

fn main() -> sojourn::Result<()> {
    for t in [0.0, 0.2, 1.0, 5.0] {
        let cfg = McConfig {
            n_particles: 200_000,
            dx: 0.1,
            t_phys: t,
            tau: TauProfile::unit_staircase(),
            b: 1.0,
            domain: Domain::Periodic { length: 4.0 },
            wrap_policy: WrapPolicy::WrapBeforeCost,
            init: InitialPositions::Uniform,
            seed: 7,
        };
        let ens = simulate(&cfg)?;
        let f = region_fractions(&ens.positions, &[0.0, 1.0, 2.0, 3.0, 4.0])?;
        println!("t = {t:>3}: {:.3?}", f);
    }
    println!("target:   [0.1, 0.2, 0.3, 0.4]");
    Ok(())
}
