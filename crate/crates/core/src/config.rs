//! Model configuration: composition of matching parameters, preferences,
//! and policy, plus TOML/JSON file loading.

use crate::dynamics::{Policy, Preferences};
use crate::error::{Error, Result};
use crate::market::MatchingParams;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// The full model configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub matching: MatchingParams,
    pub prefs: Preferences,
    pub policy: Policy,
}

impl ModelConfig {
    /// Default calibration: `s = 0.04`, `ω = 1` (so `u* = 4%` and
    /// `ω = 25s`), `δ = 0.03`, `σ = 0.03`, `π* = 2%`, `κ = 60000`, `l = 1`,
    /// `φ = 1.5`, and the policy intercept at the efficient rate `i*`.
    pub fn default_calibration() -> Self {
        let matching = MatchingParams {
            s: 0.04,
            omega: 1.0,
        };
        let prefs = Preferences {
            delta: 0.03,
            sigma: 0.03,
            pi_star: 0.02,
            kappa_plus: 60_000.0,
            kappa_minus: 60_000.0,
            labor_force: 1.0,
        };
        let u_star = matching.s / matching.omega;
        let i_star = prefs.pi_star + prefs.delta - prefs.sigma * (1.0 - u_star) * prefs.labor_force;
        ModelConfig {
            matching,
            prefs,
            policy: Policy {
                intercept: i_star,
                phi: 1.5,
                enforce_zlb: false,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        MatchingParams::new(self.matching.s, self.matching.omega)?;
        self.prefs.validate()?;
        self.policy.validate()?;
        Ok(())
    }

    /// Efficient unemployment rate `u* = s/ω`.
    pub fn u_star(&self) -> f64 {
        self.matching.ratio()
    }

    /// Replaces the policy intercept with the efficient nominal rate.
    pub fn with_efficient_intercept(mut self) -> Self {
        self.policy.intercept = crate::dynamics::efficient_nominal_rate(&self).i_star;
        self
    }
}

/// On-disk schema. Matches [`ModelConfig`] sections, with two conveniences:
/// `preferences.kappa` sets both adjustment costs, and a missing
/// `policy.intercept` defaults to the efficient rate `i*`.
#[derive(Debug, Deserialize)]
struct FileConfig {
    #[serde(default)]
    matching: FileMatching,
    #[serde(default)]
    preferences: FilePreferences,
    #[serde(default)]
    policy: FilePolicy,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileMatching {
    s: Option<f64>,
    omega: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilePreferences {
    delta: Option<f64>,
    sigma: Option<f64>,
    pi_star: Option<f64>,
    kappa: Option<f64>,
    kappa_plus: Option<f64>,
    kappa_minus: Option<f64>,
    labor_force: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilePolicy {
    intercept: Option<f64>,
    phi: Option<f64>,
    enforce_zlb: Option<bool>,
}

impl FileConfig {
    fn into_model(self) -> Result<ModelConfig> {
        let base = ModelConfig::default_calibration();
        let mut cfg = ModelConfig {
            matching: MatchingParams {
                s: self.matching.s.unwrap_or(base.matching.s),
                omega: self.matching.omega.unwrap_or(base.matching.omega),
            },
            prefs: Preferences {
                delta: self.preferences.delta.unwrap_or(base.prefs.delta),
                sigma: self.preferences.sigma.unwrap_or(base.prefs.sigma),
                pi_star: self.preferences.pi_star.unwrap_or(base.prefs.pi_star),
                kappa_plus: self
                    .preferences
                    .kappa_plus
                    .or(self.preferences.kappa)
                    .unwrap_or(base.prefs.kappa_plus),
                kappa_minus: self
                    .preferences
                    .kappa_minus
                    .or(self.preferences.kappa)
                    .unwrap_or(base.prefs.kappa_minus),
                labor_force: self
                    .preferences
                    .labor_force
                    .unwrap_or(base.prefs.labor_force),
            },
            policy: Policy {
                intercept: 0.0,
                phi: self.policy.phi.unwrap_or(base.policy.phi),
                enforce_zlb: self.policy.enforce_zlb.unwrap_or(false),
            },
        };
        cfg.policy.intercept = match self.policy.intercept {
            Some(i) => i,
            None => crate::dynamics::efficient_nominal_rate(&cfg).i_star,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Loads a configuration from a TOML or JSON file (decided by extension;
/// with no recognized extension, TOML is tried first).
pub fn load_config(path: &Path) -> Result<ModelConfig> {
    let text = std::fs::read_to_string(path)?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let file: FileConfig = match ext {
        "json" => serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        "toml" => {
            toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        }
        _ => match toml::from_str(&text) {
            Ok(f) => f,
            Err(toml_err) => serde_json::from_str(&text).map_err(|json_err| {
                Error::Parse(format!(
                    "{}: not valid TOML ({toml_err}) or JSON ({json_err})",
                    path.display()
                ))
            })?,
        },
    };
    file.into_model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::io::Write;

    #[test]
    fn default_calibration_is_valid_and_divine() {
        let cfg = ModelConfig::default_calibration();
        cfg.validate().unwrap();
        assert_eq!(cfg.u_star(), 0.04);
        assert_relative_eq!(cfg.policy.intercept, 0.0212, max_relative = 1e-12);
    }

    #[test]
    fn toml_roundtrip_with_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.toml");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(
            f,
            "[matching]\ns = 0.03\nomega = 0.75\n\n[preferences]\nkappa = 50000\n\n[policy]\nphi = 0.5"
        )
        .unwrap();
        let cfg = load_config(&path).unwrap();
        assert_eq!(cfg.matching.s, 0.03);
        assert_eq!(cfg.u_star(), 0.04);
        assert_eq!(cfg.prefs.kappa_plus, 50_000.0);
        assert_eq!(cfg.prefs.kappa_minus, 50_000.0);
        assert_eq!(cfg.policy.phi, 0.5);
        // Intercept defaults to i*.
        assert_relative_eq!(cfg.policy.intercept, 0.0212, max_relative = 1e-12);
    }

    #[test]
    fn json_config_loads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        std::fs::write(
            &path,
            r#"{"preferences": {"kappa_plus": 60000, "kappa_minus": 120000}}"#,
        )
        .unwrap();
        let cfg = load_config(&path).unwrap();
        assert!(cfg.prefs.kinked());
    }

    #[test]
    fn invalid_config_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.toml");
        std::fs::write(&path, "[matching]\ns = 0.5\nomega = 0.9\n").unwrap();
        assert!(load_config(&path).is_err());
        // kappa_minus < kappa_plus violates the kink assumption.
        std::fs::write(
            &path,
            "[preferences]\nkappa_plus = 60000\nkappa_minus = 30000\n",
        )
        .unwrap();
        assert!(load_config(&path).is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_config(Path::new("/nonexistent/model.toml")).unwrap_err();
        assert!(err.is_io());
    }
}
