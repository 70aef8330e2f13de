use sojourn::greens::greens_v_at;
use sojourn::pde::{l1_rel, mass, solve, steady_state, Boundary, PdeGrid};
use sojourn::TauProfile;

fn main() -> sojourn::Result<()> {
    // two-region problem started from the kernel at t = 0.05
    let tau = TauProfile::TwoRegion;
    for h in [0.04, 0.02, 0.01] {
        let grid = PdeGrid::new(-8.0, 8.0, h, Boundary::TruncatedZero, 1.0, &tau)?;
        let x = grid.centers();
        let v0 = x.iter().map(|&x| greens_v_at(0.05, x, 0.0)).collect::<sojourn::Result<Vec<_>>>()?;
        let v = solve(&tau, &v0, &grid, 0.45)?;
        let exact = x.iter().map(|&x| greens_v_at(0.5, x, 0.0)).collect::<sojourn::Result<Vec<_>>>()?;
        println!("h = {h:<5} l1_rel vs kernel = {:.3e}", l1_rel(&v, &exact));
    }

    // relaxation to C τ on a periodic sinusoid
    let tau = TauProfile::half_sine();
    let length = 2.0 * std::f64::consts::PI;
    let grid = PdeGrid::new(0.0, length, length / 100.0, Boundary::Periodic, 1.0, &tau)?;
    let v0: Vec<f64> = grid.centers().iter().map(|x| 1.0 + (3.0 * x).cos()).collect();
    let target = steady_state(&tau, mass(&v0, grid.h), &grid)?;
    for t in [1.0, 5.0, 20.0] {
        let v = solve(&tau, &v0, &grid, t)?;
        println!("t = {t:<4} l1_rel vs C tau = {:.3e}", l1_rel(&v, &target));
    }
    Ok(())
}
