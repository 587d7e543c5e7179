//! Run configuration: one JSON document holding every tunable, merged with
//! command-line overrides (flags win).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::baseline::BaselineConfig;
use crate::cleaning::CleanConfig;
use crate::fingerprint::MineConfig;
use crate::fogsim::RecordSizes;
use crate::postfilter::FilterConfig;
use crate::rca::RcaConfig;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DetectorConfig {
    pub tau: f64,
    pub min_samples: u64,
    pub bin_count: usize,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        let b = BaselineConfig::default();
        DetectorConfig {
            tau: b.tau,
            min_samples: b.min_samples,
            bin_count: b.bin_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub train_fraction: f64,
    pub clean: CleanConfig,
    pub detector: DetectorConfig,
    pub filter: FilterConfig,
    pub mine: MineConfig,
    /// Minimum KPI score for a symptom to enter a transaction.
    pub z_symptom: f64,
    pub rca: RcaConfig,
    pub sizes: RecordSizes,
    /// Topology JSON; `None` selects the built-in default topology.
    pub topology: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            train_fraction: 0.7,
            clean: CleanConfig::default(),
            detector: DetectorConfig::default(),
            filter: FilterConfig::default(),
            mine: MineConfig::default(),
            z_symptom: 3.0,
            rca: RcaConfig::default(),
            sizes: RecordSizes::default(),
            topology: None,
            seed: 7,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    /// Baseline settings; sketch bounds are filled in from the catalog by
    /// the pipeline.
    pub fn baseline(&self) -> BaselineConfig {
        BaselineConfig {
            bin_count: self.detector.bin_count,
            tau: self.detector.tau,
            min_samples: self.detector.min_samples,
            ..BaselineConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let usage = |m: String| Err(Error::Usage(format!("invalid config: {m}")));
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return usage("train_fraction must lie in (0, 1)".into());
        }
        if !(self.z_symptom > 0.0 && self.z_symptom.is_finite()) {
            return usage("z_symptom must be > 0".into());
        }
        if let Err(e) = self.clean.validate() {
            return usage(e.to_string());
        }
        if let Err(e) = self.baseline().validate() {
            return usage(e.to_string());
        }
        if let Err(e) = self.filter.validate() {
            return usage(e.to_string());
        }
        if let Err(e) = self.mine.validate() {
            return usage(e.to_string());
        }
        if let Err(e) = self.rca.validate() {
            return usage(e);
        }
        if let Err(e) = self.sizes.validate() {
            return usage(e);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        let c = RunConfig::default();
        c.validate().unwrap();
        let back: RunConfig = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn partial_document_fills_defaults() {
        let c: RunConfig = serde_json::from_str(r#"{"detector": {"tau": 4.0}, "seed": 3}"#).unwrap();
        assert_eq!(c.detector.tau, 4.0);
        assert_eq!(c.detector.bin_count, 128);
        assert_eq!(c.seed, 3);
        assert_eq!(c.mine, MineConfig::default());
    }

    #[test]
    fn unknown_fields_and_bad_values_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"tua": 4.0}"#).is_err());
        let c = RunConfig {
            train_fraction: 1.0,
            ..Default::default()
        };
        assert!(matches!(c.validate(), Err(Error::Usage(_))));
        let mut c = RunConfig::default();
        c.filter.persistence_m = 5;
        assert!(c.validate().is_err());
    }
}
