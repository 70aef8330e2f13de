//! Fixed and adaptive Gauss quadrature on finite intervals.

use crate::error::{Error, Result};

// Kronrod abscissae (positive half, descending), G7K15.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const GL5_X: [f64; 5] = [
    -0.906_179_845_938_663_992_797_626_878_299_392,
    -0.538_469_310_105_683_091_036_314_420_700_208,
    0.0,
    0.538_469_310_105_683_091_036_314_420_700_208,
    0.906_179_845_938_663_992_797_626_878_299_392,
];

const GL5_W: [f64; 5] = [
    0.236_926_885_056_189_087_514_264_040_719_918,
    0.478_628_670_499_366_468_041_291_514_835_638,
    0.568_888_888_888_888_888_888_888_888_888_889,
    0.478_628_670_499_366_468_041_291_514_835_638,
    0.236_926_885_056_189_087_514_264_040_719_918,
];

/// Stopping rule for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_splits: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-11,
            rel: 1e-10,
            max_splits: 1 << 12,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub splits: usize,
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive G7K15 quadrature of `f` over `[lo, hi]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate meets `max(tol.abs, tol.rel * |value|)`. Running out of splits is
/// an error carrying the achieved estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<Integral> {
    if lo == hi {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            splits: 0,
            evaluations: 0,
        });
    }
    let mut panels = vec![gk15(&f, lo, hi)];
    let mut splits = 0;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::NonFinite("quadrature integrand"));
        }
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target {
            return Ok(Integral {
                value,
                error,
                splits,
                evaluations: 15 * (2 * splits + 1),
            });
        }
        if splits >= tol.max_splits {
            return Err(Error::QuadratureNonConvergence {
                lo,
                hi,
                achieved: error,
                requested: target,
                splits,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        panels.push(gk15(&f, p.lo, mid));
        panels.push(gk15(&f, mid, p.hi));
        splits += 1;
    }
}

/// Adaptive quadrature over consecutive pieces `[breaks[i], breaks[i+1]]`.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: Tolerance) -> Result<Integral> {
    let mut total = Integral {
        value: 0.0,
        error: 0.0,
        splits: 0,
        evaluations: 0,
    };
    for w in breaks.windows(2) {
        let r = integrate(&f, w[0], w[1], tol)?;
        total.value += r.value;
        total.error += r.error;
        total.splits += r.splits;
        total.evaluations += r.evaluations;
    }
    Ok(total)
}

/// Composite five-point Gauss–Legendre rule on `panels` equal sub-intervals.
pub fn gauss_legendre5<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let width = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let a = lo + k as f64 * width;
        let center = a + 0.5 * width;
        let mut s = 0.0;
        for (x, w) in GL5_X.iter().zip(GL5_W.iter()) {
            s += w * f(center + 0.5 * width * x);
        }
        total += 0.5 * width * s;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl5_is_exact_for_degree_nine() {
        let f = |x: f64| x.powi(9) - 3.0 * x.powi(4) + 1.0;
        let exact = |x: f64| x.powi(10) / 10.0 - 3.0 * x.powi(5) / 5.0 + x;
        let got = gauss_legendre5(f, -0.3, 1.7, 1);
        assert!((got - (exact(1.7) - exact(-0.3))).abs() < 1e-13);
    }

    #[test]
    fn adaptive_gaussian() {
        let r = integrate(|x: f64| (-x * x).exp(), -12.0, 12.0, Tolerance::default()).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_integrable_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let tol = Tolerance {
            abs: 1e-8,
            rel: 1e-8,
            max_splits: 1 << 12,
        };
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, tol).unwrap();
        assert!((r.value - 2.0).abs() < 1e-7);
    }

    #[test]
    fn reports_non_convergence() {
        let tol = Tolerance {
            abs: 1e-14,
            rel: 1e-14,
            max_splits: 3,
        };
        let err = integrate(|x: f64| (1.0 / x.max(1e-300)).sin(), 0.0, 1.0, tol).unwrap_err();
        match err {
            Error::QuadratureNonConvergence { splits, achieved, .. } => {
                assert_eq!(splits, 3);
                assert!(achieved > 1e-14);
            }
            e => panic!("unexpected {e}"),
        }
    }
}
