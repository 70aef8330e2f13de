use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, DiscreteCDF, Normal};

use crate::error::{invalid, Result};
use crate::tau::TauProfile;

/// Counts on bins `[edges[k], edges[k+1])`; the last bin also holds its right
/// edge.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }
}

fn check_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(invalid("edges", "need at least two edges"));
    }
    if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("edges", "must be finite and strictly increasing"));
    }
    Ok(())
}

/// Edges `lo, lo + w, ...` up to `hi`; a trailing partial bin is kept.
pub fn uniform_edges(lo: f64, hi: f64, width: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && hi > lo && width.is_finite() && width > 0.0) {
        return Err(invalid("edges", "need lo < hi and width > 0"));
    }
    let n = ((hi - lo) / width).round() as usize;
    let mut edges: Vec<f64> = (0..=n).map(|k| lo + k as f64 * width).collect();
    let last = *edges.last().expect("n + 1 edges");
    if (last - hi).abs() <= 1e-9 * width {
        *edges.last_mut().expect("n + 1 edges") = hi;
    } else if last < hi {
        edges.push(hi);
    } else {
        edges.pop();
        edges.push(hi);
    }
    Ok(edges)
}

pub fn histogram(positions: &[f64], edges: &[f64]) -> Result<Histogram> {
    check_edges(edges)?;
    let bins = edges.len() - 1;
    let (lo, hi) = (edges[0], edges[bins]);
    let mut h = Histogram {
        edges: edges.to_vec(),
        counts: vec![0; bins],
        underflow: 0,
        overflow: 0,
    };
    for &x in positions {
        if x < lo {
            h.underflow += 1;
        } else if x > hi {
            h.overflow += 1;
        } else {
            let k = edges.partition_point(|&e| e <= x).saturating_sub(1).min(bins - 1);
            h.counts[k] += 1;
        }
    }
    Ok(h)
}

/// Expected counts N·∫_bin τ / ∫_{edges} τ of the stationary density ∝ τ.
pub fn steady_state_reference(tau: &TauProfile, edges: &[f64], n: u64) -> Result<Vec<f64>> {
    check_edges(edges)?;
    let total = tau.integral(edges[0], edges[edges.len() - 1]);
    Ok(edges
        .windows(2)
        .map(|w| n as f64 * tau.integral(w[0], w[1]) / total)
        .collect())
}

/// Fractions of `positions` in consecutive intervals `(breaks[k], breaks[k+1]]`.
pub fn region_fractions(positions: &[f64], breaks: &[f64]) -> Result<Vec<f64>> {
    check_edges(breaks)?;
    let mut counts = vec![0u64; breaks.len() - 1];
    for &x in positions {
        let k = breaks.partition_point(|&b| b < x);
        if k >= 1 && k < breaks.len() {
            counts[k - 1] += 1;
        } else if k == 0 && x == breaks[0] {
            counts[0] += 1;
        }
    }
    let n = positions.len().max(1) as f64;
    Ok(counts.into_iter().map(|c| c as f64 / n).collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramComparison {
    /// Σ|c - e| / Σe over all bins.
    pub l1_rel: f64,
    /// Pearson statistic over bins with e ≥ 5.
    pub chi2: f64,
    pub dof: usize,
}

pub fn compare_histogram(hist: &Histogram, expected: &[f64]) -> Result<HistogramComparison> {
    if expected.len() != hist.counts.len() {
        return Err(invalid("expected", "length must match the number of bins"));
    }
    let mut abs = 0.0;
    let mut mass = 0.0;
    let mut chi2 = 0.0;
    let mut used = 0usize;
    for (&c, &e) in hist.counts.iter().zip(expected) {
        let c = c as f64;
        abs += (c - e).abs();
        mass += e;
        if e >= 5.0 {
            chi2 += (c - e) * (c - e) / e;
            used += 1;
        }
    }
    if mass <= 0.0 {
        return Err(invalid("expected", "total expected count must be > 0"));
    }
    Ok(HistogramComparison {
        l1_rel: abs / mass,
        chi2,
        dof: used.saturating_sub(1),
    })
}

/// Two-sided acceptance band of χ²_dof at significance `alpha`.
pub fn chi2_band(dof: usize, alpha: f64) -> Result<(f64, f64)> {
    if dof == 0 || !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("chi2", "need dof > 0 and 0 < alpha < 1"));
    }
    let dist = ChiSquared::new(dof as f64).map_err(|e| invalid("chi2", e.to_string()))?;
    Ok((dist.inverse_cdf(0.5 * alpha), dist.inverse_cdf(1.0 - 0.5 * alpha)))
}

/// Multinomial standard deviation √(N p (1 - p)) of each bin count.
pub fn multinomial_sigma(expected: &[f64], n: u64) -> Vec<f64> {
    let n = n as f64;
    expected
        .iter()
        .map(|&e| {
            let p = (e / n).clamp(0.0, 1.0);
            (n * p * (1.0 - p)).sqrt()
        })
        .collect()
}

/// Expected Σ|c - e| / Σe of a pure sampling-noise histogram.
pub fn noise_l1(expected: &[f64], n: u64) -> f64 {
    let mass: f64 = expected.iter().sum();
    let spread: f64 = multinomial_sigma(expected, n).iter().sum();
    spread * (2.0 / std::f64::consts::PI).sqrt() / mass
}

/// Number of bins whose count lies more than `k` multinomial σ from its
/// expectation.
pub fn bins_outside_band(hist: &Histogram, expected: &[f64], n: u64, k: f64) -> Result<usize> {
    if expected.len() != hist.counts.len() {
        return Err(invalid("expected", "length must match the number of bins"));
    }
    let sigma = multinomial_sigma(expected, n);
    Ok(hist
        .counts
        .iter()
        .zip(expected.iter().zip(&sigma))
        .filter(|(&c, (&e, &s))| (c as f64 - e).abs() > k * s)
        .count())
}

/// Largest number of independent bins outside a `k`σ band that pure noise
/// exceeds with probability at most `alpha`.
pub fn band_exceedance_allowance(bins: usize, k: f64, alpha: f64) -> Result<usize> {
    let z = Normal::new(0.0, 1.0).map_err(|e| invalid("band", e.to_string()))?;
    let p = 2.0 * z.sf(k);
    let dist = Binomial::new(p, bins as u64).map_err(|e| invalid("band", e.to_string()))?;
    Ok((0..=bins).find(|&m| dist.sf(m as u64) <= alpha).unwrap_or(bins))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bins_are_left_closed() {
        let h = histogram(&[0.0, 0.5, 1.0, 2.0, -0.1, 2.1], &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(h.counts, vec![2, 2]);
        assert_eq!((h.underflow, h.overflow), (1, 1));
        assert_eq!(h.total(), 6);
    }

    #[test]
    fn uniform_edges_cover_range() {
        let e = uniform_edges(-4.0, 4.0, 0.05).unwrap();
        assert_eq!(e.len(), 161);
        assert_eq!(e[0], -4.0);
        assert_eq!(e[160], 4.0);
        let e = uniform_edges(0.0, 1.0, 0.3).unwrap();
        assert_eq!(e.last(), Some(&1.0));
        assert!(uniform_edges(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn staircase_reference_proportions() {
        let e = steady_state_reference(&TauProfile::unit_staircase(), &[0.0, 1.0, 2.0, 3.0, 4.0], 1000).unwrap();
        assert_eq!(e, vec![100.0, 200.0, 300.0, 400.0]);
    }

    #[test]
    fn perfect_match_has_zero_distance() {
        let h = histogram(&[0.5, 1.5, 1.6], &[0.0, 1.0, 2.0]).unwrap();
        let c = compare_histogram(&h, &[1.0, 2.0]).unwrap();
        assert_eq!(c.l1_rel, 0.0);
        assert_eq!(c.dof, 0);
    }

    #[test]
    fn chi2_band_brackets_mean() {
        let (lo, hi) = chi2_band(100, 0.001).unwrap();
        assert!(lo < 100.0 && 100.0 < hi);
        assert!(lo > 50.0 && hi < 160.0);
    }

    #[test]
    fn fractions_sum_to_one() {
        let f = region_fractions(&[0.0, 0.5, 1.5, 2.5, 3.5, 4.0], &[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(f, vec![2.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 6.0]);
    }

    #[test]
    fn identical_particles_share_a_bin() {
        let h = histogram(&[0.05], &[0.0, 0.1, 0.2]).unwrap();
        assert_eq!(h.counts, vec![1, 0]);
        let h = histogram(&vec![0.15; 1000], &[0.0, 0.1, 0.2]).unwrap();
        assert_eq!(h.counts, vec![0, 1000]);
    }

    #[test]
    fn l1_grows_with_shift() {
        let edges = uniform_edges(-5.0, 5.0, 0.1).unwrap();
        let centers: Vec<f64> = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let gauss = |m: f64| -> Vec<f64> { centers.iter().map(|x| 1e4 * (-(x - m) * (x - m)).exp()).collect() };
        let base = gauss(0.0);
        let h = Histogram {
            edges: edges.clone(),
            counts: base.iter().map(|e| e.round() as u64).collect(),
            underflow: 0,
            overflow: 0,
        };
        let mut last = -1.0;
        for shift in [0.0, 0.1, 0.2, 0.4, 0.8] {
            let l1 = compare_histogram(&h, &gauss(shift)).unwrap().l1_rel;
            assert!(l1 > last);
            last = l1;
        }
    }

    #[test]
    fn band_allowance_grows_with_bins() {
        // P(|Z| > 3) ≈ 0.0027: with 32 bins, P(X > 2) ≈ 9.2e-5 but P(X > 1) ≈ 3.4e-3
        assert_eq!(band_exceedance_allowance(32, 3.0, 0.001).unwrap(), 2);
        assert_eq!(band_exceedance_allowance(1, 3.0, 0.001).unwrap(), 1);
        assert!(band_exceedance_allowance(1000, 3.0, 0.001).unwrap() > 2);
    }
}
