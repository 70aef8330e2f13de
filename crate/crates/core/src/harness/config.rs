//! JSON run configuration. Every section is optional; a command fails with a
//! config error when its own section is missing. Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ReducedStencil;
use crate::montecarlo::{Domain, InitialPositions, WrapPolicy};
use crate::pde::Boundary;
use crate::tau::TauProfile;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Default seed for every randomized engine; `--seed` overrides it.
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub lattice: Option<LatticeSection>,
    #[serde(default)]
    pub greens: Option<GreensSection>,
    #[serde(default)]
    pub mc: Option<McSection>,
    #[serde(default)]
    pub pde: Option<PdeSection>,
    #[serde(default)]
    pub converge: Option<ConvergeSection>,
    #[serde(default)]
    pub verify: Option<VerifySection>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// The named section, or a config error naming it.
pub fn require<'a, T>(name: &str, section: &'a Option<T>) -> Result<&'a T> {
    section
        .as_ref()
        .ok_or_else(|| Error::Config(format!("config has no `{name}` section")))
}

/// Initial density of a lattice or PDE run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialDensity {
    /// Unit mass at the grid node `x`.
    Delta { x: f64 },
    /// v0 = τ w0 with w0 a Gaussian, scaled to unit mass.
    Gaussian { center: f64, sigma: f64 },
    /// The two-region kernel G(t_start, ·; a).
    Greens { t_start: f64, a: f64 },
    /// `mass` spread as C τ over a closed domain.
    SteadyState { mass: f64 },
    /// Independent uniform values in [0, 1) per cell, drawn from the run seed.
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// Advance the Markov chain on the reduced grid.
    #[default]
    Reduced,
    /// Advance the two-level raw chain and sample its even rows.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSection {
    pub eps: f64,
    /// Raw time steps; must be even.
    pub raw_steps: usize,
    pub init: InitialDensity,
    #[serde(default)]
    pub chain: ChainKind,
    /// Average the last two reduced rows to remove the parity comb.
    #[serde(default)]
    pub parity_average: bool,
    /// Also overlay the two-region kernel at the matching time.
    #[serde(default)]
    pub compare_greens: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreensSection {
    pub t: f64,
    pub a: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
}

/// Histogram bins `lo, lo + width, ...` up to `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinSpec {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    pub n_particles: usize,
    pub dx: f64,
    /// One run per listed time.
    pub t_phys: Vec<f64>,
    pub tau: TauProfile,
    /// One run per listed reference point.
    pub b: Vec<f64>,
    pub domain: Domain,
    #[serde(default)]
    pub wrap_policy: WrapPolicy,
    pub init: InitialPositions,
    pub bins: BinSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdeSection {
    pub tau: TauProfile,
    pub x_min: f64,
    pub x_max: f64,
    pub h: f64,
    pub bc: Boundary,
    #[serde(default = "one")]
    pub d: f64,
    /// Time step; the largest stable step when absent.
    #[serde(default)]
    pub k: Option<f64>,
    pub t_end: f64,
    pub init: InitialDensity,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeSection {
    pub eps: Vec<f64>,
    /// Unit-scale time; t/ε² must be an integer for every ε.
    pub t: f64,
    pub center: f64,
    pub sigma: f64,
    /// Spacing of the finite-difference reference solution.
    pub oracle_h: f64,
    /// Half-width of the reference domain and of the compared window.
    pub half_width: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    /// Criterion names to run; all when absent.
    #[serde(default)]
    pub only: Option<Vec<String>>,
    /// Stencil under test for the chain-equivalence criterion.
    #[serde(default)]
    pub stencil: Option<ReducedStencil>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_valid() {
        assert_eq!(RunConfig::from_json("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::from_json(r#"{"lattice_typo": {}}"#).is_err());
        let bad = r#"{"greens": {"t": 0.5, "a": 0, "x_min": -1, "x_max": 1, "dx": 0.1, "extra": 1}}"#;
        assert!(matches!(RunConfig::from_json(bad), Err(Error::Config(_))));
    }

    #[test]
    fn missing_section_named() {
        let cfg = RunConfig::default();
        let err = require("mc", &cfg.mc).unwrap_err();
        assert!(err.to_string().contains("mc"));
    }
}
