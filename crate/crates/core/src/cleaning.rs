//! Training-data cleaning and chronological train/test splitting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::MetricSeries;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CleanError {
    #[error("series {cell}/{metric}: {have} usable points, need at least {need}")]
    TooFewPoints {
        cell: String,
        metric: String,
        have: usize,
        need: usize,
    },
    #[error("invalid cleaning config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CleanConfig {
    /// Tukey fence multiplier on the inter-quartile range.
    pub iqr_multiplier: f64,
    pub min_points: usize,
}

impl Default for CleanConfig {
    fn default() -> Self {
        CleanConfig {
            iqr_multiplier: 6.0,
            min_points: 24,
        }
    }
}

impl CleanConfig {
    pub fn validate(&self) -> Result<(), CleanError> {
        if !(self.iqr_multiplier > 0.0 && self.iqr_multiplier.is_finite()) {
            return Err(CleanError::InvalidConfig("iqr_multiplier must be > 0".into()));
        }
        if self.min_points < 4 {
            return Err(CleanError::InvalidConfig("min_points must be >= 4".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanDetail {
    pub cell_id: String,
    pub metric_name: String,
    pub missing_removed: usize,
    pub extremes_removed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanReport {
    pub missing_removed: usize,
    pub extremes_removed: usize,
    pub details: Vec<CleanDetail>,
}

impl CleanReport {
    /// Folds another report in; details stay sorted by (cell, metric).
    pub fn absorb(&mut self, other: CleanReport) {
        self.missing_removed += other.missing_removed;
        self.extremes_removed += other.extremes_removed;
        let mut merged: BTreeMap<(String, String), CleanDetail> = self
            .details
            .drain(..)
            .chain(other.details)
            .map(|d| ((d.cell_id.clone(), d.metric_name.clone()), d))
            .collect();
        self.details = std::mem::take(&mut merged).into_values().collect();
    }
}

/// Linear-interpolation quantile of sorted data (`p` in [0, 1]).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Drops missing points, then drops points outside the Tukey fences
/// `[Q1 - k*IQR, Q3 + k*IQR]` computed once over this series' present values.
pub fn clean(series: &MetricSeries, cfg: &CleanConfig) -> Result<(MetricSeries, CleanReport), CleanError> {
    cfg.validate()?;
    let present: Vec<f64> = series.present_values().collect();
    let missing_removed = series.len() - present.len();

    let too_few = |have: usize| CleanError::TooFewPoints {
        cell: series.cell_id.clone(),
        metric: series.metric_name.clone(),
        have,
        need: cfg.min_points,
    };
    if present.is_empty() {
        return Err(too_few(0));
    }

    let mut sorted = present;
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile_sorted(&sorted, 0.25);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let (lo, hi) = (q1 - cfg.iqr_multiplier * iqr, q3 + cfg.iqr_multiplier * iqr);

    let points: Vec<_> = series
        .points
        .iter()
        .filter(|p| p.value.is_some_and(|v| v >= lo && v <= hi))
        .copied()
        .collect();
    let extremes_removed = sorted.len() - points.len();
    if points.len() < cfg.min_points {
        return Err(too_few(points.len()));
    }

    let report = CleanReport {
        missing_removed,
        extremes_removed,
        details: vec![CleanDetail {
            cell_id: series.cell_id.clone(),
            metric_name: series.metric_name.clone(),
            missing_removed,
            extremes_removed,
        }],
    };
    Ok((series.empty_like().with_points(points), report))
}

/// Number of points assigned to the training part: `ceil(n * fraction)`,
/// tolerant of representation error in `fraction`.
pub fn train_len(n: usize, train_fraction: f64) -> usize {
    let x = n as f64 * train_fraction;
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// Chronological split; no shuffling.
pub fn chrono_split(series: &MetricSeries, train_fraction: f64) -> Result<(MetricSeries, MetricSeries), CleanError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(CleanError::InvalidConfig(
            "train_fraction must lie strictly between 0 and 1".into(),
        ));
    }
    let n = series.len();
    let k = train_len(n, train_fraction);
    if k == 0 || k >= n {
        return Err(CleanError::TooFewPoints {
            cell: series.cell_id.clone(),
            metric: series.metric_name.clone(),
            have: n,
            need: 2,
        });
    }
    let train = series.empty_like().with_points(series.points[..k].to_vec());
    let test = series.empty_like().with_points(series.points[k..].to_vec());
    Ok((train, test))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{MetricKind, Point, Polarity};
    use proptest::prelude::*;

    fn series(values: &[Option<f64>]) -> MetricSeries {
        MetricSeries::new("c1", "m", MetricKind::Kqi, Polarity::HigherIsWorse, 300).with_points(
            values
                .iter()
                .enumerate()
                .map(|(i, v)| Point::new(i as i64 * 300, *v))
                .collect(),
        )
    }

    #[test]
    fn constant_series_untouched() {
        let s = series(&[Some(5.0); 30]);
        let (out, rep) = clean(&s, &CleanConfig::default()).unwrap();
        assert_eq!(out, s);
        assert_eq!((rep.missing_removed, rep.extremes_removed), (0, 0));
    }

    #[test]
    fn gross_outlier_removed() {
        let mut v = vec![Some(5.0); 29];
        v.push(Some(1e9));
        // Sorted, positions 7.25 and 21.75 both fall among the 5.0s: the
        // fence collapses to [5, 5].
        let (out, rep) = clean(&series(&v), &CleanConfig::default()).unwrap();
        assert_eq!(rep.extremes_removed, 1);
        assert_eq!(out.len(), 29);
    }

    #[test]
    fn missing_counted() {
        let v: Vec<_> = (0..30).map(|i| if i < 10 { None } else { Some(i as f64) }).collect();
        let cfg = CleanConfig {
            min_points: 4,
            ..Default::default()
        };
        let (out, rep) = clean(&series(&v), &cfg).unwrap();
        assert_eq!(rep.missing_removed, 10);
        assert_eq!(out.len(), 20);
    }

    #[test]
    fn too_few_points() {
        let v: Vec<_> = (0..30).map(|i| if i < 10 { None } else { Some(1.0) }).collect();
        assert!(matches!(
            clean(&series(&v), &CleanConfig::default()),
            Err(CleanError::TooFewPoints { have: 20, need: 24, .. })
        ));
        assert!(matches!(
            clean(&series(&[None; 5]), &CleanConfig::default()),
            Err(CleanError::TooFewPoints { have: 0, .. })
        ));
    }

    #[test]
    fn split_examples() {
        let s = series(&[Some(1.0); 10]);
        let (a, b) = chrono_split(&s, 0.7).unwrap();
        assert_eq!((a.len(), b.len()), (7, 3));
        assert_eq!(b.points[0].window_start, 7 * 300);
        assert!(matches!(chrono_split(&s, 0.95), Err(CleanError::TooFewPoints { .. })));
        let (a, b) = chrono_split(&series(&[Some(1.0); 2]), 0.5).unwrap();
        assert_eq!((a.len(), b.len()), (1, 1));
        assert!(chrono_split(&s, 1.0).is_err());
    }

    #[test]
    fn quantile_interpolates() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&v, 0.25), 1.75);
        assert_eq!(quantile_sorted(&v, 0.5), 2.5);
        assert_eq!(quantile_sorted(&[7.0], 0.75), 7.0);
    }

    #[test]
    fn report_absorb_sorted() {
        let mut a = CleanReport::default();
        for cell in ["c2", "c1"] {
            let s = series(&[Some(1.0); 30]);
            let s = MetricSeries {
                cell_id: cell.into(),
                ..s
            };
            a.absorb(clean(&s, &CleanConfig::default()).unwrap().1);
        }
        assert_eq!(a.details[0].cell_id, "c1");
    }

    proptest! {
        #[test]
        fn counts_reconcile_and_order_kept(
            vals in prop::collection::vec(prop::option::weighted(0.8, -1e3f64..1e3), 30..120),
            spikes in prop::collection::vec((0usize..120, 1e6f64..1e9), 0..4),
        ) {
            let mut vals = vals;
            for (i, v) in spikes {
                let n = vals.len();
                vals[i % n] = Some(v);
            }
            let s = series(&vals);
            let cfg = CleanConfig { min_points: 4, ..Default::default() };
            if let Ok((out, rep)) = clean(&s, &cfg) {
                prop_assert_eq!(s.len(), out.len() + rep.missing_removed + rep.extremes_removed);
                prop_assert!(out.points.windows(2).all(|w| w[0].window_start < w[1].window_start));
                // second pass never finds missing values
                if let Ok((_, rep2)) = clean(&out, &cfg) {
                    prop_assert_eq!(rep2.missing_removed, 0);
                }
                // single pass is deterministic
                let again = clean(&s, &cfg).unwrap();
                prop_assert_eq!(&again.0, &out);
            }
        }
    }
}
