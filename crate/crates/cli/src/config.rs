use std::path::PathBuf;

use corona_walk_core::spectral::Tolerances;
use corona_walk_core::transfer::{DEFAULT_L_MAX, DEFAULT_TARGET};
use thiserror::Error;

/// Prefix of the environment variables that override default tolerances.
pub const ENV_PREFIX: &str = "CORONAWALK_";
pub const MAX_TOLERANCE: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub l_max: u64,
    pub target: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            l_max: DEFAULT_L_MAX,
            target: DEFAULT_TARGET,
            format: Format::Json,
            output: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{name} must be in (0, {MAX_TOLERANCE}], got {value}")]
    Tolerance { name: &'static str, value: f64 },
    #[error("lmax must be at least 1")]
    LMax,
    #[error("target must be in (0, 1], got {0}")]
    Target(f64),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let t = &self.tolerances;
        for (name, value) in [
            ("group tolerance", t.group),
            ("support tolerance", t.support),
            ("cospectral tolerance", t.cospectral),
        ] {
            if !(value > 0.0 && value <= MAX_TOLERANCE) {
                return Err(ConfigError::Tolerance { name, value });
            }
        }
        if self.l_max < 1 {
            return Err(ConfigError::LMax);
        }
        if !(self.target > 0.0 && self.target <= 1.0) {
            return Err(ConfigError::Target(self.target));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert_eq!(RunConfig::default().validate(), Ok(()));
    }

    #[test]
    fn rejects_out_of_range() {
        let mut c = RunConfig::default();
        c.tolerances.group = 0.0;
        assert!(matches!(c.validate(), Err(ConfigError::Tolerance { .. })));
        c.tolerances.group = 0.5;
        assert!(c.validate().is_err());
        c.tolerances.group = f64::NAN;
        assert!(c.validate().is_err());
        let c = RunConfig {
            l_max: 0,
            ..RunConfig::default()
        };
        assert_eq!(c.validate(), Err(ConfigError::LMax));
        let c = RunConfig {
            target: 1.5,
            ..RunConfig::default()
        };
        assert_eq!(c.validate(), Err(ConfigError::Target(1.5)));
    }
}
