//! Anomaly detection and root-cause diagnosis for cellular network
//! telemetry, built so that training and rule mining can run split across
//! fog nodes and merge to the same answer as a central run.
//!
//! Stages, in pipeline order:
//!
//! - [`ingest`]: CDR and KQI/KPI CSV parsing, the metric catalog, CDR
//!   aggregation into per-window KQIs.
//! - [`cleaning`]: missing-value and gross-outlier removal, chronological
//!   split.
//! - [`baseline`]: per (cell, metric, hour) histogram sketches giving
//!   median/MAD robust scores; sketches merge exactly.
//! - [`postfilter`]: persistence, event merging and a peak-score floor.
//! - [`fingerprint`]: rare association rules from KPI symptoms to degraded
//!   KQIs, by FP-Growth or by merging per-partition count tables.
//! - [`rca`]: k-nearest fingerprints by Jaccard distance.
//! - [`fogsim`]: byte and latency accounting for centralized, edge and fog
//!   placements.
//! - [`synth`]: seeded scenarios with planted anomalies and causes, and an
//!   evaluator.
//!
//! [`pipeline`] wires the stages together and [`cli`] exposes them as
//! subcommands.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baseline;
pub mod cleaning;
pub mod cli;
pub mod config;
pub mod fingerprint;
pub mod fogsim;
pub mod ingest;
pub mod pipeline;
pub mod postfilter;
pub mod rca;
pub mod synth;

use std::path::Path;

use thiserror::Error;

pub use baseline::{BaselineConfig, BaselineModel, DetectError};
pub use cleaning::{CleanConfig, CleanError};
pub use config::RunConfig;
pub use fingerprint::{Fingerprint, FingerprintDb, MineConfig, MineError, SymptomItem};
pub use fogsim::{DeploymentStrategy, FogError, FogTopology};
pub use ingest::{IngestError, MetricCatalog, MetricSeries};
pub use pipeline::Dataset;
pub use postfilter::{AnomalyEvent, FilterConfig, FilterConfigError};
pub use rca::{DiagnosedEvent, Diagnosis, RcaConfig};
pub use synth::{GroundTruth, ScenarioSpec, SynthError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Clean(#[from] CleanError),
    #[error(transparent)]
    Detect(#[from] DetectError),
    #[error(transparent)]
    Filter(#[from] FilterConfigError),
    #[error(transparent)]
    Mine(#[from] MineError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Fog(#[from] FogError),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// True for bad invocations, bad configuration and unreadable or
    /// unwritable files.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Usage(_) | Error::Io { .. } | Error::Filter(_) => true,
            Error::Ingest(e) => matches!(e, IngestError::Io { .. }),
            Error::Clean(e) => matches!(e, CleanError::InvalidConfig(_)),
            Error::Detect(e) => matches!(e, DetectError::Io { .. } | DetectError::InvalidConfig(_)),
            Error::Mine(e) => matches!(e, MineError::Io { .. } | MineError::InvalidConfig(_)),
            Error::Synth(e) => matches!(e, SynthError::Io { .. } | SynthError::InvalidSpec(_)),
            Error::Fog(e) => matches!(e, FogError::Io { .. } | FogError::InvalidTopology(_)),
            Error::Domain(_) => false,
        }
    }

    /// 2 for usage and I/O errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        if self.is_usage() {
            2
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let too_few = Error::from(CleanError::TooFewPoints {
            cell: "c".into(),
            metric: "m".into(),
            have: 1,
            need: 24,
        });
        assert_eq!(too_few.exit_code(), 1);
        let missing = Error::io(Path::new("x"), std::io::Error::from(std::io::ErrorKind::NotFound));
        assert_eq!(missing.exit_code(), 2);
        assert_eq!(Error::Usage("bad flag".into()).exit_code(), 2);
        assert_eq!(Error::from(FogError::UnassignedCell("c".into())).exit_code(), 1);
    }
}
