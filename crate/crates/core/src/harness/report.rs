use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    L1Rel,
    Linf,
    Chi2,
    AbsError,
    Seconds,
    Order,
    Count,
    /// 1 when a qualitative property holds, 0 otherwise.
    Holds,
}

/// One checked quantity. `pass` holds iff `lower <= value <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub metric: Metric,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    /// Set for a documented failure that does not fail the run.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub known_failure: Option<String>,
}

impl Comparison {
    pub fn at_most(name: impl Into<String>, metric: Metric, value: f64, tolerance: f64) -> Self {
        Comparison {
            name: name.into(),
            metric,
            value,
            lower: None,
            tolerance,
            pass: value <= tolerance,
            known_failure: None,
        }
    }

    pub fn within(name: impl Into<String>, metric: Metric, value: f64, lower: f64, upper: f64) -> Self {
        Comparison {
            name: name.into(),
            metric,
            value,
            lower: Some(lower),
            tolerance: upper,
            pass: lower <= value && value <= upper,
            known_failure: None,
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Comparison::within(name, Metric::Holds, if ok { 1.0 } else { 0.0 }, 1.0, 1.0)
    }

    /// Mark as a documented failure; a later pass is reported as unexpected.
    pub fn known(mut self, reason: impl Into<String>) -> Self {
        self.known_failure = Some(reason.into());
        self
    }

    /// Fails the run: failed and not documented, or documented but passing.
    pub fn is_unexpected(&self) -> bool {
        self.pass == self.known_failure.is_some()
    }

    pub fn status(&self) -> &'static str {
        match (self.pass, self.known_failure.is_some()) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "XFAIL",
            (true, true) => "XPASS",
        }
    }

    pub fn line(&self) -> String {
        let bound = match self.lower {
            Some(lo) => format!("in [{lo:.6e}, {:.6e}]", self.tolerance),
            None => format!("<= {:.6e}", self.tolerance),
        };
        let metric = serde_json::to_value(self.metric)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        let mut s = format!("{:<5} {}: {metric} = {:.6e} {bound}", self.status(), self.name, self.value);
        if let Some(reason) = &self.known_failure {
            s.push_str(&format!(" (known: {reason})"));
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub comparisons: Vec<Comparison>,
}

impl ComparisonReport {
    pub fn push(&mut self, c: Comparison) {
        self.comparisons.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Comparison>) {
        self.comparisons.extend(cs);
    }

    pub fn ok(&self) -> bool {
        !self.comparisons.iter().any(Comparison::is_unexpected)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rules() {
        assert!(Comparison::at_most("a", Metric::L1Rel, 0.01, 0.02).pass);
        assert!(!Comparison::at_most("a", Metric::L1Rel, 0.03, 0.02).pass);
        assert!(!Comparison::at_most("a", Metric::L1Rel, f64::NAN, 0.02).pass);
        assert!(!Comparison::within("c", Metric::Chi2, 10.0, 20.0, 30.0).pass);
    }

    #[test]
    fn known_failures_do_not_fail_report() {
        let mut r = ComparisonReport::default();
        r.push(Comparison::holds("x", false).known("why"));
        assert!(r.ok());
        r.push(Comparison::holds("y", true).known("why"));
        assert!(!r.ok());
        assert_eq!(r.comparisons[1].status(), "XPASS");
    }
}
