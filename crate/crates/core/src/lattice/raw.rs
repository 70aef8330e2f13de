use crate::error::{invalid, Error, Result};

use super::reduced::ReducedState;

/// A window of probabilities p^j on the uniform lattice x^j = jε.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub start: i64,
    pub p: Vec<f64>,
}

impl Row {
    pub fn end(&self) -> i64 {
        self.start + self.p.len() as i64
    }

    pub fn get(&self, j: i64) -> f64 {
        if j < self.start || j >= self.end() {
            0.0
        } else {
            self.p[(j - self.start) as usize]
        }
    }

    pub fn sum(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// The non-Markovian chain's full state: rows at time levels n-1 and n.
///
/// A particle at j > 0 needs two time levels per jump, so the row sum alone is
/// not conserved; see [`RawLatticeState::conserved_mass`].
#[derive(Clone, Debug, PartialEq)]
pub struct RawLatticeState {
    pub eps: f64,
    pub n: usize,
    pub prev: Row,
    pub cur: Row,
}

impl RawLatticeState {
    /// Initial state at n = 0 with the history p_n = p_0 for n < 0.
    pub fn from_initial(eps: f64, start: i64, p: Vec<f64>) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(invalid("eps", "must be finite and > 0"));
        }
        if let Some(&bad) = p.iter().find(|&&x| !(x >= 0.0)) {
            return Err(invalid("p", format!("probabilities must be >= 0, got {bad}")));
        }
        let row = Row { start, p };
        Ok(RawLatticeState {
            eps,
            n: 0,
            prev: row.clone(),
            cur: row,
        })
    }

    /// p_0^j = δ_{jk}.
    pub fn delta(eps: f64, site: i64) -> Result<Self> {
        Self::from_initial(eps, site, vec![1.0])
    }

    /// Lift a reduced row to raw sites: p^{2j} = 2ε w^j for j < 0, p^j = 2ε w^j
    /// for j ≥ 0, zero on odd sites of the left region.
    pub fn from_reduced(state: &ReducedState) -> Result<Self> {
        let lo = raw_site(state.start);
        let hi = raw_site(state.end() - 1).max(lo);
        let mut p = vec![0.0; (hi - lo + 1) as usize];
        for j in state.indices() {
            p[(raw_site(j) - lo) as usize] = 2.0 * state.eps * state.get(j);
        }
        Self::from_initial(state.eps, lo, p)
    }

    /// Σ_j p_n^j.
    pub fn row_sum(&self) -> f64 {
        self.cur.sum()
    }

    /// Σ_j p_n^j + Σ_{j>0} p_{n-1}^j + ½ p_{n-1}^0: the row sum plus the mass
    /// still in flight from the slow region. Invariant under [`step_raw`].
    pub fn conserved_mass(&self) -> f64 {
        let in_flight: f64 = (1.max(self.prev.start)..self.prev.end())
            .map(|j| self.prev.get(j))
            .sum();
        self.cur.sum() + in_flight + 0.5 * self.prev.get(0)
    }
}

/// Raw lattice index of reduced index `j`.
pub fn raw_site(j: i64) -> i64 {
    if j < 0 {
        2 * j
    } else {
        j
    }
}

/// Advance (p_{n-1}, p_n) to (p_n, p_{n+1}).
pub fn step_raw(state: &RawLatticeState) -> RawLatticeState {
    let start = state.cur.start.min(state.prev.start) - 1;
    let end = state.cur.end().max(state.prev.end()) + 1;
    let cur = &state.cur;
    let prev = &state.prev;
    let p = (start..end)
        .map(|j| {
            if j < 0 {
                0.5 * (cur.get(j - 1) + cur.get(j + 1))
            } else if j == 0 {
                0.5 * (cur.get(-1) + prev.get(1))
            } else {
                0.5 * (prev.get(j - 1) + prev.get(j + 1))
            }
        })
        .collect();
    RawLatticeState {
        eps: state.eps,
        n: state.n + 1,
        prev: state.cur.clone(),
        cur: Row { start, p },
    }
}

pub fn evolve_raw(initial: &RawLatticeState, steps: usize) -> Vec<RawLatticeState> {
    let mut traj = Vec::with_capacity(steps + 1);
    traj.push(initial.clone());
    for _ in 0..steps {
        let next = step_raw(traj.last().expect("non-empty"));
        traj.push(next);
    }
    traj
}

/// Reduced row of an even raw time level.
pub fn reduce_state(state: &RawLatticeState) -> Result<ReducedState> {
    if state.n % 2 != 0 {
        return Err(invalid("n", format!("raw time level {} is odd", state.n)));
    }
    let row = &state.cur;
    // reduced j < 0 ↔ raw 2j; reduced j >= 0 ↔ raw j
    let start = if row.start < 0 { row.start.div_euclid(2) } else { row.start };
    let end = row.end().max(1);
    let scale = 1.0 / (2.0 * state.eps);
    let w = (start..end).map(|j| scale * row.get(raw_site(j))).collect();
    ReducedState::new(state.eps, state.n / 2, start, w)
}

/// Extract reduced rows ℓ = 0..=steps from a raw trajectory that starts at
/// n = 0 and has consecutive time levels.
pub fn reduce_from_raw(traj: &[RawLatticeState], steps: usize) -> Result<Vec<ReducedState>> {
    let needed = 2 * steps + 1;
    if traj.len() < needed {
        return Err(Error::TrajectoryTooShort {
            needed,
            have: traj.len(),
        });
    }
    if let Some((k, s)) = traj.iter().enumerate().find(|(k, s)| s.n != *k) {
        return Err(invalid("raw_trajectory", format!("entry {k} has time level {}", s.n)));
    }
    (0..=steps).map(|ell| reduce_state(&traj[2 * ell])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::reduced::step_reduced;

    #[test]
    fn delta_first_two_steps() {
        let s0 = RawLatticeState::delta(0.1, 0).unwrap();
        let s1 = step_raw(&s0);
        assert_eq!(s1.cur.get(-1), 0.5);
        assert_eq!(s1.cur.get(0), 0.0);
        assert_eq!(s1.cur.get(1), 0.5);
        let s2 = step_raw(&s1);
        assert_eq!(s2.cur.get(-2), 0.25);
        assert_eq!(s2.cur.get(-1), 0.0);
        assert_eq!(s2.cur.get(0), 0.25);
        assert_eq!(s2.cur.get(1), 0.5);
        assert_eq!(s2.row_sum(), 1.0);
    }

    #[test]
    fn zero_rows_stay_zero() {
        let s = RawLatticeState::from_initial(0.1, -3, vec![0.0; 7]).unwrap();
        let t = evolve_raw(&s, 10);
        assert!(t.iter().all(|s| s.cur.p.iter().all(|&p| p == 0.0)));
    }

    #[test]
    fn support_grows_one_site_per_step() {
        let s = RawLatticeState::delta(0.1, 0).unwrap();
        let t = evolve_raw(&s, 5);
        for w in t.windows(2) {
            let grow_lo = w[0].cur.start.min(w[0].prev.start) - w[1].cur.start;
            let grow_hi = w[1].cur.end() - w[0].cur.end().max(w[0].prev.end());
            assert_eq!((grow_lo, grow_hi), (1, 1));
        }
    }

    #[test]
    fn row_sum_is_not_the_invariant() {
        // a particle starting in the slow region is in flight during n = 1
        let s0 = RawLatticeState::delta(0.1, 1).unwrap();
        let t = evolve_raw(&s0, 40);
        // p_2 = {-1: 1/4, 0: 1/2, 2: 1/2}
        assert_eq!(t[2].row_sum(), 1.25);
        assert!(t.iter().any(|s| (s.row_sum() - 1.0).abs() > 0.1));
        let m0 = t[0].conserved_mass();
        for s in &t {
            assert!((s.conserved_mass() - m0).abs() < 1e-14);
        }
    }

    #[test]
    fn one_reduced_step_from_left_delta() {
        let s0 = RawLatticeState::delta(0.1, -4).unwrap();
        let traj = evolve_raw(&s0, 4);
        let red = reduce_from_raw(&traj, 2).unwrap();
        assert_eq!(red.len(), 3);
        let direct = step_reduced(&red[0]);
        for j in -6..=2 {
            assert!((red[1].get(j) - direct.get(j)).abs() <= 1e-14);
        }
        let direct2 = step_reduced(&direct);
        for j in -6..=2 {
            assert!((red[2].get(j) - direct2.get(j)).abs() <= 1e-14);
        }
    }

    #[test]
    fn short_trajectory_rejected() {
        let s0 = RawLatticeState::delta(0.1, 0).unwrap();
        let traj = evolve_raw(&s0, 3);
        assert!(matches!(
            reduce_from_raw(&traj, 2),
            Err(Error::TrajectoryTooShort { needed: 5, have: 4 })
        ));
    }

    #[test]
    fn from_reduced_round_trip() {
        let r = ReducedState::new(0.1, 0, -3, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let raw = RawLatticeState::from_reduced(&r).unwrap();
        assert_eq!(raw.cur.get(-5), 0.0);
        assert!((raw.cur.get(-4) - 0.2 * 2.0).abs() < 1e-15);
        let back = reduce_state(&raw).unwrap();
        for j in -3..2 {
            assert!((back.get(j) - r.get(j)).abs() < 1e-14);
        }
    }
}
