//! A unit mass at the interface node, advanced on the reduced chain and
//! compared with the two-region kernel at the same unit-scale time.

use sojourn::greens::greens_v_at;
use sojourn::lattice::{density, evolve, mass, parity_average, ReducedState};

fn main() -> sojourn::Result<()> {
    let eps = 0.05;
    let steps = 200; // reduced steps; t = steps * ε²
    let traj = evolve(&ReducedState::delta(eps, 0)?, steps);
    let last = parity_average(&traj[steps - 1], &traj[steps]);
    let t = steps as f64 * eps * eps;

    println!("t = {t}, mass = {:.15}", mass(&last));
    println!("{:>8} {:>12} {:>12}", "x", "lattice", "kernel");
    for (x, v) in density(&last).into_iter().filter(|(x, _)| x.abs() <= 2.0).step_by(8) {
        println!("{x:>8.3} {v:>12.6} {:>12.6}", greens_v_at(t, x, 0.0)?);
    }
    Ok(())
}
