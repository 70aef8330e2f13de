use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

use super::{node, spacing};

/// Markovian row w_ℓ^j on the non-uniform grid y^j.
///
/// Entries outside `[start, start + w.len())` are exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedState {
    pub eps: f64,
    pub ell: usize,
    pub start: i64,
    pub w: Vec<f64>,
}

/// Stencil weights of the reduced recursion; the exact chain is
/// [`ReducedStencil::EXACT`]. Other weights exist only for mutation tests.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducedStencil {
    /// Weights of w^{j-1}, w^j, w^{j+1} for j < 0.
    pub left: [f64; 3],
    /// Weights of w^{-1}, w^0, w^1 at j = 0.
    pub interface: [f64; 3],
    /// Weights of w^{j-1}, w^{j+1} for j > 0.
    pub right: [f64; 2],
}

impl ReducedStencil {
    pub const EXACT: ReducedStencil = ReducedStencil {
        left: [0.25, 0.5, 0.25],
        interface: [0.25, 0.25, 0.5],
        right: [0.5, 0.5],
    };
}

impl Default for ReducedStencil {
    fn default() -> Self {
        Self::EXACT
    }
}

impl ReducedState {
    pub fn new(eps: f64, ell: usize, start: i64, w: Vec<f64>) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(invalid("eps", "must be finite and > 0"));
        }
        Ok(ReducedState { eps, ell, start, w })
    }

    pub fn zeros(eps: f64, start: i64, len: usize) -> Result<Self> {
        Self::new(eps, 0, start, vec![0.0; len])
    }

    /// Unit probability at grid index `j`, i.e. w^j = 1/(2ε).
    pub fn delta(eps: f64, j: i64) -> Result<Self> {
        Self::new(eps, 0, j, vec![1.0 / (2.0 * eps)])
    }

    /// One past the last stored index.
    pub fn end(&self) -> i64 {
        self.start + self.w.len() as i64
    }

    pub fn get(&self, j: i64) -> f64 {
        if j < self.start || j >= self.end() {
            0.0
        } else {
            self.w[(j - self.start) as usize]
        }
    }

    pub fn indices(&self) -> std::ops::Range<i64> {
        self.start..self.end()
    }

    /// Walk clock t_{2ℓ} = 2ℓε².
    pub fn time(&self) -> f64 {
        2.0 * self.ell as f64 * self.eps * self.eps
    }

    /// p̃^j = 2ε w^j.
    pub fn probabilities(&self) -> Vec<f64> {
        self.w.iter().map(|w| 2.0 * self.eps * w).collect()
    }

    pub fn sup_abs(&self) -> f64 {
        self.w.iter().fold(0.0, |m, w| m.max(w.abs()))
    }
}

/// One step of the reduced chain with the exact weights.
pub fn step_reduced(state: &ReducedState) -> ReducedState {
    step_reduced_with(state, &ReducedStencil::EXACT)
}

pub fn step_reduced_with(state: &ReducedState, stencil: &ReducedStencil) -> ReducedState {
    let start = state.start - 1;
    let end = state.end() + 1;
    let mut w = Vec::with_capacity((end - start) as usize);
    for j in start..end {
        let v = if j < 0 {
            let [a, b, c] = stencil.left;
            a * state.get(j - 1) + b * state.get(j) + c * state.get(j + 1)
        } else if j == 0 {
            let [a, b, c] = stencil.interface;
            a * state.get(-1) + b * state.get(0) + c * state.get(1)
        } else {
            let [a, c] = stencil.right;
            a * state.get(j - 1) + c * state.get(j + 1)
        };
        w.push(v);
    }
    ReducedState {
        eps: state.eps,
        ell: state.ell + 1,
        start,
        w,
    }
}

/// `steps` applications of [`step_reduced`], including the initial state.
pub fn evolve(initial: &ReducedState, steps: usize) -> Vec<ReducedState> {
    let mut traj = Vec::with_capacity(steps + 1);
    traj.push(initial.clone());
    for _ in 0..steps {
        let next = step_reduced(traj.last().expect("non-empty"));
        traj.push(next);
    }
    traj
}

/// Σ_j 2ε w^j, the total probability.
pub fn mass(state: &ReducedState) -> f64 {
    state.w.iter().sum::<f64>() * 2.0 * state.eps
}

/// Σ_j (2ε w^j)².
pub fn energy(state: &ReducedState) -> f64 {
    state
        .w
        .iter()
        .map(|w| {
            let p = 2.0 * state.eps * w;
            p * p
        })
        .sum()
}

/// First and second difference quotients of a reduced row.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientField {
    pub eps: f64,
    /// Index of `l[0]`.
    pub l_start: i64,
    pub l: Vec<f64>,
    /// Index of `q[0]`.
    pub q_start: i64,
    pub q: Vec<f64>,
}

impl QuotientField {
    pub fn l_at(&self, j: i64) -> f64 {
        at(self.l_start, &self.l, j)
    }

    pub fn q_at(&self, j: i64) -> f64 {
        at(self.q_start, &self.q, j)
    }

    pub fn sup_l(&self) -> f64 {
        self.l.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn sup_q(&self) -> f64 {
        self.q.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

fn at(start: i64, xs: &[f64], j: i64) -> f64 {
    if j < start || j >= start + xs.len() as i64 {
        0.0
    } else {
        xs[(j - start) as usize]
    }
}

/// L^j = (w^{j+1} - w^j)/Δy^j and Q^j = (L^j - L^{j-1})/(2ε), over every index
/// where they can be nonzero.
pub fn difference_quotients(state: &ReducedState) -> Result<QuotientField> {
    if state.w.len() < 3 {
        return Err(Error::SupportTooSmall {
            cells: state.w.len(),
            needed: 3,
        });
    }
    let eps = state.eps;
    let l_start = state.start - 1;
    let l: Vec<f64> = (l_start..state.end())
        .map(|j| (state.get(j + 1) - state.get(j)) / spacing(eps, j))
        .collect();
    let q_start = state.start - 1;
    let q: Vec<f64> = (q_start..state.end() + 1)
        .map(|j| (at(l_start, &l, j) - at(l_start, &l, j - 1)) / (2.0 * eps))
        .collect();
    Ok(QuotientField {
        eps,
        l_start,
        l,
        q_start,
        q,
    })
}

/// Largest entrywise gap between (w_{ℓ+1} - w_ℓ)/ε² and Q_ℓ.
pub fn quotient_identity_defect(current: &ReducedState, next: &ReducedState) -> Result<f64> {
    let quotients = difference_quotients(current)?;
    let eps2 = current.eps * current.eps;
    let lo = current.start.min(next.start) - 1;
    let hi = current.end().max(next.end()) + 1;
    Ok((lo..hi)
        .map(|j| ((next.get(j) - current.get(j)) / eps2 - quotients.q_at(j)).abs())
        .fold(0.0, f64::max))
}

/// Entrywise mean of two rows, used to remove the parity comb of δ-type data.
pub fn parity_average(a: &ReducedState, b: &ReducedState) -> ReducedState {
    let start = a.start.min(b.start);
    let end = a.end().max(b.end());
    ReducedState {
        eps: a.eps,
        ell: a.ell.max(b.ell),
        start,
        w: (start..end).map(|j| 0.5 * (a.get(j) + b.get(j))).collect(),
    }
}

/// Grid coordinates y^j of the stored window.
pub fn nodes(state: &ReducedState) -> Vec<f64> {
    state.indices().map(|j| node(state.eps, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(start: i64, w: &[f64]) -> ReducedState {
        ReducedState::new(0.1, 0, start, w.to_vec()).unwrap()
    }

    #[test]
    fn constant_row_is_fixed_inside() {
        let s = row(-10, &[3.0; 21]);
        let n = step_reduced(&s);
        for j in -9..=9 {
            assert_eq!(n.get(j), 3.0, "j = {j}");
        }
    }

    #[test]
    fn delta_left_spreads_quarter_half_quarter() {
        let n = step_reduced(&row(-5, &[1.0]));
        assert_eq!(n.get(-6), 0.25);
        assert_eq!(n.get(-5), 0.5);
        assert_eq!(n.get(-4), 0.25);
        assert_eq!(n.w.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn delta_right_splits_in_halves() {
        let n = step_reduced(&row(5, &[1.0]));
        assert_eq!(n.get(4), 0.5);
        assert_eq!(n.get(5), 0.0);
        assert_eq!(n.get(6), 0.5);
    }

    #[test]
    fn single_step_energy_from_left_delta() {
        let s = ReducedState::new(0.1, 0, -5, vec![1.0 / 0.2]).unwrap();
        assert!((energy(&s) - 1.0).abs() < 1e-15);
        assert!((energy(&step_reduced(&s)) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn quotients_of_constant_vanish_inside() {
        let s = row(-10, &[2.0; 21]);
        let q = difference_quotients(&s).unwrap();
        for j in -9..10 {
            assert_eq!(q.l_at(j), 0.0);
        }
        for j in -9..10 {
            assert_eq!(q.q_at(j), 0.0);
        }
    }

    #[test]
    fn quotients_of_grid_coordinate() {
        let eps = 0.125;
        let w: Vec<f64> = (-8..=8).map(|j| node(eps, j)).collect();
        let s = ReducedState::new(eps, 0, -8, w).unwrap();
        let q = difference_quotients(&s).unwrap();
        for j in -8..8 {
            assert!((q.l_at(j) - 1.0).abs() < 1e-14, "L at {j}");
        }
        for j in -7..8 {
            if j != 0 {
                assert!(q.q_at(j).abs() < 1e-13, "Q at {j}");
            }
        }
        // Interface row: (L^0 - L^{-1})/(2ε) = 0 too for a linear profile.
        assert!(q.q_at(0).abs() < 1e-13);
    }

    #[test]
    fn quotient_identity_holds() {
        let eps = 0.0625;
        let w: Vec<f64> = (-20..=20).map(|j| (-(node(eps, j)).powi(2)).exp()).collect();
        let s = ReducedState::new(eps, 0, -20, w).unwrap();
        let n = step_reduced(&s);
        assert!(quotient_identity_defect(&s, &n).unwrap() < 1e-13);
    }

    #[test]
    fn quotients_need_three_cells() {
        assert!(matches!(
            difference_quotients(&row(0, &[1.0, 2.0])),
            Err(Error::SupportTooSmall { cells: 2, .. })
        ));
    }

    #[test]
    fn zero_state() {
        let z = ReducedState::zeros(0.1, -3, 6).unwrap();
        assert_eq!(mass(&z), 0.0);
        assert_eq!(energy(&z), 0.0);
        assert!(step_reduced(&z).w.iter().all(|&x| x == 0.0));
    }
}
