//! Resolved run configuration, embedded in every report envelope.

use serde::Serialize;

/// Named tolerances; each can be overridden with `--tol <name>=<value>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Allowed excess of the interior maximum over the boundary maximum.
    pub max_slack: f64,
    /// Bound on `sum_k |F_k x0|^2` in the maximizing-vector check.
    pub leak: f64,
    /// Bound on `|F(q) x0 - F(q0) x0|`.
    pub constancy: f64,
    pub reconstruction: f64,
    pub unitarity: f64,
    pub norm_preservation: f64,
    /// Largest off-diagonal entry accepted in the decomposition.
    pub block: f64,
    /// Relative slack when deciding that all singular values share a minimizer.
    pub min_slack: f64,
    /// Agreement of computed singular values and norms with fixture values.
    pub fixture: f64,
    /// `|F(q)| = 1` check before the `2 x 2` approximation.
    pub norm_one: f64,
    /// `| |B(z)| - 1 |` on the unit circle.
    pub blaschke_modulus: f64,
    /// Error of approximants expected to be exact.
    pub exact_recovery: f64,
    /// Slack of the Schur-class test.
    pub schur_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            max_slack: 1e-9,
            leak: 1e-20,
            constancy: 1e-10,
            reconstruction: 1e-9,
            unitarity: 1e-12,
            norm_preservation: 1e-10,
            block: 1e-9,
            min_slack: 1e-6,
            fixture: 1e-12,
            norm_one: 1e-9,
            blaschke_modulus: 1e-10,
            exact_recovery: 1e-12,
            schur_slack: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown tolerance {0:?}; known: {known}", known = Tolerances::NAMES.join(", "))]
    UnknownTolerance(String),
    #[error("tolerance {name} must be a nonnegative finite number, got {value}")]
    BadValue { name: String, value: f64 },
    #[error("expected <name>=<value>, got {0:?}")]
    Syntax(String),
}

impl Tolerances {
    pub const NAMES: [&'static str; 13] = [
        "max_slack",
        "leak",
        "constancy",
        "reconstruction",
        "unitarity",
        "norm_preservation",
        "block",
        "min_slack",
        "fixture",
        "norm_one",
        "blaschke_modulus",
        "exact_recovery",
        "schur_slack",
    ];

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), ConfigError> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(ConfigError::BadValue { name: name.into(), value });
        }
        let slot = match name {
            "max_slack" => &mut self.max_slack,
            "leak" => &mut self.leak,
            "constancy" => &mut self.constancy,
            "reconstruction" => &mut self.reconstruction,
            "unitarity" => &mut self.unitarity,
            "norm_preservation" => &mut self.norm_preservation,
            "block" => &mut self.block,
            "min_slack" => &mut self.min_slack,
            "fixture" => &mut self.fixture,
            "norm_one" => &mut self.norm_one,
            "blaschke_modulus" => &mut self.blaschke_modulus,
            "exact_recovery" => &mut self.exact_recovery,
            "schur_slack" => &mut self.schur_slack,
            _ => return Err(ConfigError::UnknownTolerance(name.into())),
        };
        *slot = value;
        Ok(())
    }

    /// Applies one `name=value` override.
    pub fn apply(&mut self, entry: &str) -> Result<(), ConfigError> {
        let (name, value) = entry.split_once('=').ok_or_else(|| ConfigError::Syntax(entry.into()))?;
        let value: f64 = value.trim().parse().map_err(|_| ConfigError::Syntax(entry.into()))?;
        self.set(name.trim(), value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Interior and boundary sample counts for the max-principle checks.
    pub samples: usize,
    pub rho: f64,
    pub epsilon: f64,
    /// Annulus radii for the annulus example.
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            samples: 4096,
            rho: 0.9,
            epsilon: 1e-2,
            r: 0.25,
            big_r: 1.0,
            tolerances: Tolerances::default(),
            out: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_by_name() {
        let mut t = Tolerances::default();
        t.apply("leak=1e-18").unwrap();
        assert_eq!(t.leak, 1e-18);
        assert!(matches!(t.apply("nope=1"), Err(ConfigError::UnknownTolerance(_))));
        assert!(matches!(t.apply("leak"), Err(ConfigError::Syntax(_))));
        assert!(matches!(t.apply("leak=-1"), Err(ConfigError::BadValue { .. })));
    }

    #[test]
    fn every_name_is_settable() {
        let mut t = Tolerances::default();
        for name in Tolerances::NAMES {
            t.set(name, 0.5).unwrap();
        }
        let v = serde_json::to_value(t).unwrap();
        assert_eq!(v.as_object().unwrap().len(), Tolerances::NAMES.len());
        assert!(v.as_object().unwrap().values().all(|x| x.as_f64() == Some(0.5)));
    }
}
