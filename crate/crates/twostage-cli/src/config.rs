//! Scenario files: flat `key = value` lines with `#` comments.
//!
//! Parsing is fail-closed: unknown keys, duplicate keys and malformed values
//! are errors naming the offending key, so a typo cannot silently fall back
//! to a default. Warranty-channel keys are required exactly when
//! `warranty = on`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use twostage_core::{DemandDensity, ModelParams, WarrantyParams};

/// Which initial-perception value feeds single-scenario commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimation {
    Overestimation,
    Underestimation,
}

/// A parsed scenario.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub params: ModelParams,
    pub density: DemandDensity,
    pub wom: bool,
    pub warranty: bool,
    pub estimation: Estimation,
    pub r0_oe: f64,
    pub r0_ue: Option<f64>,
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

const KNOWN_KEYS: &[&str] = &[
    "alpha", "gamma", "c", "beta", "rm", "r0_oe", "r0_ue", "estimation", "n_periods", "density",
    "mu", "sigma", "wom", "warranty", "f0", "cw", "d", "b", "beta0", "beta1", "output",
];

struct Raw(BTreeMap<String, String>);

impl Raw {
    fn float(&self, key: &str) -> Result<f64, ConfigError> {
        let v = self
            .0
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing required key `{key}`")))?;
        v.parse::<f64>()
            .map_err(|_| ConfigError(format!("key `{key}`: `{v}` is not a number")))
    }

    fn float_opt(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| ConfigError(format!("key `{key}`: `{v}` is not a number"))),
        }
    }

    fn float_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.float_opt(key)?.unwrap_or(default))
    }

    fn usize(&self, key: &str) -> Result<usize, ConfigError> {
        let v = self
            .0
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing required key `{key}`")))?;
        v.parse::<usize>()
            .map_err(|_| ConfigError(format!("key `{key}`: `{v}` is not a positive integer")))
    }

    fn switch(&self, key: &str) -> Result<bool, ConfigError> {
        let v = self
            .0
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing required key `{key}`")))?;
        match v.as_str() {
            "on" => Ok(true),
            "off" => Ok(false),
            other => Err(ConfigError(format!("key `{key}`: expected on|off, got `{other}`"))),
        }
    }
}

/// Parse scenario text. See the shipped `scenarios/table2.scn` for the format.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(ConfigError(format!("unknown key `{key}` (line {})", lineno + 1)));
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(ConfigError(format!("duplicate key `{key}` (line {})", lineno + 1)));
        }
    }
    let raw = Raw(map);

    let warranty_on = raw.switch("warranty")?;
    let warranty = if warranty_on {
        Some(WarrantyParams {
            f0: raw.float("f0")?,
            cw: raw.float("cw")?,
            d: raw.float("d")?,
            b: raw.float("b")?,
            beta0: raw.float("beta0")?,
            beta1: raw.float("beta1")?,
        })
    } else {
        None
    };

    let estimation = match raw.0.get("estimation").map(String::as_str) {
        None | Some("oe") => Estimation::Overestimation,
        Some("ue") => Estimation::Underestimation,
        Some(other) => {
            return Err(ConfigError(format!("key `estimation`: expected oe|ue, got `{other}`")))
        }
    };
    let r0_oe = raw.float("r0_oe")?;
    let r0_ue = raw.float_opt("r0_ue")?;
    let r0 = match estimation {
        Estimation::Overestimation => r0_oe,
        Estimation::Underestimation => r0_ue.ok_or_else(|| {
            ConfigError("key `r0_ue` is required when estimation = ue".into())
        })?,
    };

    let density = match raw.0.get("density").map(String::as_str) {
        None | Some("uniform") => DemandDensity::uniform(),
        Some("truncated-normal") => {
            let mu = raw.float_or("mu", 0.5)?;
            let sigma = raw.float_or("sigma", 0.2)?;
            DemandDensity::truncated_normal(mu, sigma)
                .map_err(|e| ConfigError(format!("key `mu`/`sigma`: {e}")))?
        }
        Some(other) => {
            return Err(ConfigError(format!(
                "key `density`: expected uniform|truncated-normal, got `{other}`"
            )))
        }
    };

    let params = ModelParams {
        alpha: raw.float("alpha")?,
        gamma: raw.float("gamma")?,
        c: raw.float("c")?,
        beta: raw.float("beta")?,
        r0,
        rm: raw.float("rm")?,
        n_periods: raw.usize("n_periods")?,
        warranty,
    };
    params.validate().map_err(|e| match e {
        twostage_core::ModelError::InvalidParameter { name, reason } => {
            ConfigError(format!("key `{name}`: {reason}"))
        }
        other => ConfigError(other.to_string()),
    })?;

    Ok(ScenarioConfig {
        params,
        density,
        wom: raw.switch("wom")?,
        warranty: warranty_on,
        estimation,
        r0_oe,
        r0_ue,
        output: raw.0.get("output").map(PathBuf::from),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "
        alpha = 0.1
        gamma = 3
        c = 1
        beta = 0.5
        rm = 0.7
        r0_oe = 0.8
        n_periods = 200
        wom = off
        warranty = off
    ";

    #[test]
    fn minimal_scenario_parses() {
        let cfg = parse_scenario(MINIMAL).unwrap();
        assert_eq!(cfg.params.r0, 0.8);
        assert!(!cfg.wom && !cfg.warranty);
        assert!(cfg.density.is_uniform());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_scenario(&format!("{MINIMAL}\nalfa = 0.2")).unwrap_err();
        assert!(err.0.contains("alfa"), "{err}");
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let err = parse_scenario(&format!("{MINIMAL}\nalpha = 0.2")).unwrap_err();
        assert!(err.0.contains("duplicate"), "{err}");
    }

    #[test]
    fn warranty_keys_required_only_when_on() {
        parse_scenario(MINIMAL).unwrap();
        let on = MINIMAL.replace("warranty = off", "warranty = on");
        let err = parse_scenario(&on).unwrap_err();
        assert!(err.0.contains("f0"), "{err}");
        let full = format!("{on}\nf0=0.1\ncw=0.2\nd=5\nb=5\nbeta0=0.2\nbeta1=0.5");
        assert!(parse_scenario(&full).unwrap().warranty);
    }

    #[test]
    fn invalid_gamma_names_the_key() {
        let bad = MINIMAL.replace("gamma = 3", "gamma = 1");
        let err = parse_scenario(&bad).unwrap_err();
        assert!(err.0.contains("gamma") && err.0.contains("> 1"), "{err}");
    }

    #[test]
    fn underestimation_requires_its_r0() {
        let bad = format!("{MINIMAL}\nestimation = ue");
        assert!(parse_scenario(&bad).is_err());
        let good = format!("{MINIMAL}\nestimation = ue\nr0_ue = 0.6");
        assert_eq!(parse_scenario(&good).unwrap().params.r0, 0.6);
    }
}
