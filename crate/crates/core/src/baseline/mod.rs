//! Per-(cell, metric, hour-of-day) robust baselines and window scoring.
//!
//! A baseline is a set of [`HistogramSketch`]es. Scores are robust
//! z-scores, `|x - median| / (1.4826 * MAD + 1e-9)`, with median and MAD
//! estimated from the sketch. Only deviations in a metric's worsening
//! direction can raise a flag.

pub mod exact;
mod sketch;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{MetricSeries, Polarity};

pub use sketch::HistogramSketch;

pub const MAD_CONSISTENCY: f64 = 1.4826;
pub const SCALE_EPSILON: f64 = 1e-9;
pub const MODEL_SCHEMA_VERSION: u32 = 1;
const BOUND_MARGIN: f64 = 0.05;

#[derive(Debug, Error)]
pub enum DetectError {
    #[error("no training series given")]
    EmptyTraining,
    #[error("no baseline for cell `{}`, metric `{}`, hour {}", .0.cell_id, .0.metric_name, .0.hour)]
    UnknownKey(SeriesKey),
    #[error("incompatible sketches: {0}")]
    IncompatibleSketch(String),
    #[error("incompatible models: {0}")]
    IncompatibleModel(String),
    #[error("invalid detector config: {0}")]
    InvalidConfig(String),
    #[error("model schema version {found}, expected {expected}")]
    SchemaMismatch { found: u32, expected: u32 },
    #[error("corrupt model: {0}")]
    Corrupt(String),
    #[error("model json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeriesKey {
    pub cell_id: String,
    pub metric_name: String,
    pub hour: u8,
}

impl SeriesKey {
    pub fn new(cell_id: impl Into<String>, metric_name: impl Into<String>, hour: u8) -> Self {
        SeriesKey {
            cell_id: cell_id.into(),
            metric_name: metric_name.into(),
            hour,
        }
    }
}

/// UTC hour of day of an epoch timestamp.
pub fn hour_bucket(window_start: i64) -> u8 {
    (window_start.rem_euclid(86_400) / 3_600) as u8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BaselineConfig {
    pub bin_count: usize,
    /// Score threshold for raw window flags.
    pub tau: f64,
    pub min_samples: u64,
    /// Per-metric sketch bounds. Metrics not listed get bounds from their
    /// own training values, widened by 5% of the range on each side.
    pub fixed_bounds: BTreeMap<String, [f64; 2]>,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig {
            bin_count: 128,
            tau: 5.0,
            min_samples: 20,
            fixed_bounds: BTreeMap::new(),
        }
    }
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<(), DetectError> {
        if self.bin_count < 8 {
            return Err(DetectError::InvalidConfig("bin_count must be >= 8".into()));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(DetectError::InvalidConfig("tau must be > 0".into()));
        }
        for (m, [lo, hi]) in &self.fixed_bounds {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(DetectError::InvalidConfig(format!("bounds for `{m}` are empty")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    Up,
    Down,
    None,
}

impl Direction {
    pub fn of(value: f64, center: f64) -> Self {
        if value > center {
            Direction::Up
        } else if value < center {
            Direction::Down
        } else {
            Direction::None
        }
    }

    pub fn is_degrading(self, polarity: Polarity) -> bool {
        matches!(
            (self, polarity),
            (Direction::Up, Polarity::HigherIsWorse) | (Direction::Down, Polarity::LowerIsWorse)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnomalyScore {
    pub score: f64,
    pub direction: Direction,
    pub degrading: bool,
    pub sufficient_data: bool,
}

impl AnomalyScore {
    fn missing() -> Self {
        AnomalyScore {
            score: 0.0,
            direction: Direction::None,
            degrading: false,
            sufficient_data: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoredWindow {
    pub window_start: i64,
    pub score: AnomalyScore,
    pub flagged: bool,
}

/// Location and scale estimated from one sketch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyStats {
    pub median: f64,
    pub mad: f64,
    pub sufficient: bool,
}

impl KeyStats {
    pub fn score(&self, value: f64, polarity: Polarity) -> AnomalyScore {
        let direction = Direction::of(value, self.median);
        AnomalyScore {
            score: (value - self.median).abs() / (MAD_CONSISTENCY * self.mad + SCALE_EPSILON),
            direction,
            degrading: direction.is_degrading(polarity),
            sufficient_data: self.sufficient,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineModel {
    pub config: BaselineConfig,
    pub polarities: BTreeMap<String, Polarity>,
    pub sketches: BTreeMap<SeriesKey, HistogramSketch>,
}

impl BaselineModel {
    /// The identity for [`merge_baselines`].
    pub fn empty(config: BaselineConfig) -> Self {
        BaselineModel {
            config,
            polarities: BTreeMap::new(),
            sketches: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.sketches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sketches.is_empty()
    }

    pub fn sample_count(&self, key: &SeriesKey) -> Option<u64> {
        self.sketches.get(key).map(HistogramSketch::total)
    }

    pub fn stats(&self, key: &SeriesKey) -> Result<KeyStats, DetectError> {
        let sketch = self
            .sketches
            .get(key)
            .ok_or_else(|| DetectError::UnknownKey(key.clone()))?;
        let median = sketch.median().ok_or_else(|| DetectError::UnknownKey(key.clone()))?;
        let mad = sketch.mad(median).expect("non-empty sketch");
        Ok(KeyStats {
            median,
            mad,
            sufficient: sketch.total() >= self.config.min_samples,
        })
    }

    pub fn polarity(&self, metric: &str) -> Option<Polarity> {
        self.polarities.get(metric).copied()
    }

    /// Sub-model holding only the given cells' keys.
    pub fn restrict_to_cells(&self, cells: &BTreeSet<String>) -> BaselineModel {
        BaselineModel {
            config: self.config.clone(),
            polarities: self.polarities.clone(),
            sketches: self
                .sketches
                .iter()
                .filter(|(k, _)| cells.contains(&k.cell_id))
                .map(|(k, s)| (k.clone(), s.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&ModelDocument::from(self)).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DetectError> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        doc.try_into()
    }

    pub fn save(&self, path: &Path) -> Result<(), DetectError> {
        std::fs::write(path, self.to_json()).map_err(|source| DetectError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, DetectError> {
        let text = std::fs::read_to_string(path).map_err(|source| DetectError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}

#[derive(Serialize, Deserialize)]
struct KeyDocument {
    cell_id: String,
    metric_name: String,
    hour: u8,
    sample_count: u64,
    sketch: HistogramSketch,
}

#[derive(Serialize, Deserialize)]
struct ModelDocument {
    schema_version: u32,
    config: BaselineConfig,
    polarities: BTreeMap<String, Polarity>,
    keys: Vec<KeyDocument>,
}

impl From<&BaselineModel> for ModelDocument {
    fn from(m: &BaselineModel) -> Self {
        ModelDocument {
            schema_version: MODEL_SCHEMA_VERSION,
            config: m.config.clone(),
            polarities: m.polarities.clone(),
            keys: m
                .sketches
                .iter()
                .map(|(k, s)| KeyDocument {
                    cell_id: k.cell_id.clone(),
                    metric_name: k.metric_name.clone(),
                    hour: k.hour,
                    sample_count: s.total(),
                    sketch: s.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ModelDocument> for BaselineModel {
    type Error = DetectError;

    fn try_from(doc: ModelDocument) -> Result<Self, Self::Error> {
        if doc.schema_version != MODEL_SCHEMA_VERSION {
            return Err(DetectError::SchemaMismatch {
                found: doc.schema_version,
                expected: MODEL_SCHEMA_VERSION,
            });
        }
        doc.config.validate()?;
        let mut sketches = BTreeMap::new();
        for k in doc.keys {
            let s = k.sketch;
            if !(s.lo < s.hi) || s.bin_count() != doc.config.bin_count {
                return Err(DetectError::Corrupt(format!(
                    "bad sketch shape for {}/{}/{}",
                    k.cell_id, k.metric_name, k.hour
                )));
            }
            if s.total() != k.sample_count || k.hour > 23 {
                return Err(DetectError::Corrupt(format!(
                    "sample_count mismatch for {}/{}/{}",
                    k.cell_id, k.metric_name, k.hour
                )));
            }
            sketches.insert(SeriesKey::new(k.cell_id, k.metric_name, k.hour), s);
        }
        Ok(BaselineModel {
            config: doc.config,
            polarities: doc.polarities,
            sketches,
        })
    }
}

fn data_bounds(values: &[f64]) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let margin = if span > 0.0 {
        BOUND_MARGIN * span
    } else {
        BOUND_MARGIN * min.abs().max(1.0)
    };
    (min - margin, max + margin)
}

/// Fits one sketch per (cell, metric, hour) over the present training values.
pub fn fit_baseline(train: &[MetricSeries], cfg: &BaselineConfig) -> Result<BaselineModel, DetectError> {
    cfg.validate()?;
    if train.is_empty() {
        return Err(DetectError::EmptyTraining);
    }
    let mut model = BaselineModel::empty(cfg.clone());
    let mut grouped: BTreeMap<SeriesKey, Vec<f64>> = BTreeMap::new();
    for s in train {
        match model.polarities.get(&s.metric_name) {
            Some(p) if *p != s.polarity => {
                return Err(DetectError::IncompatibleModel(format!(
                    "metric `{}` appears with two polarities",
                    s.metric_name
                )))
            }
            _ => {
                model.polarities.insert(s.metric_name.clone(), s.polarity);
            }
        }
        for p in &s.points {
            if let Some(v) = p.value {
                grouped
                    .entry(SeriesKey::new(
                        s.cell_id.clone(),
                        s.metric_name.clone(),
                        hour_bucket(p.window_start),
                    ))
                    .or_default()
                    .push(v);
            }
        }
    }
    for (key, values) in grouped {
        let (lo, hi) = match cfg.fixed_bounds.get(&key.metric_name) {
            Some(&[lo, hi]) => (lo, hi),
            None => data_bounds(&values),
        };
        let mut sketch = HistogramSketch::new(lo, hi, cfg.bin_count);
        for v in values {
            sketch.insert(v);
        }
        model.sketches.insert(key, sketch);
    }
    Ok(model)
}

pub fn robust_score(model: &BaselineModel, key: &SeriesKey, value: f64) -> Result<AnomalyScore, DetectError> {
    let polarity = model
        .polarity(&key.metric_name)
        .ok_or_else(|| DetectError::UnknownKey(key.clone()))?;
    Ok(model.stats(key)?.score(value, polarity))
}

/// Scores every window of a series. A window is flagged when its score
/// reaches `tau`, the deviation is degrading and the key had enough data.
pub fn score_series(model: &BaselineModel, test: &MetricSeries, tau: f64) -> Result<Vec<ScoredWindow>, DetectError> {
    if !(tau > 0.0) {
        return Err(DetectError::InvalidConfig("tau must be > 0".into()));
    }
    let mut cache: HashMap<u8, KeyStats> = HashMap::new();
    let polarity = model.polarity(&test.metric_name);
    let mut out = Vec::with_capacity(test.len());
    for p in &test.points {
        let Some(v) = p.value else {
            out.push(ScoredWindow {
                window_start: p.window_start,
                score: AnomalyScore::missing(),
                flagged: false,
            });
            continue;
        };
        let hour = hour_bucket(p.window_start);
        let key = || SeriesKey::new(test.cell_id.clone(), test.metric_name.clone(), hour);
        let polarity = polarity.ok_or_else(|| DetectError::UnknownKey(key()))?;
        let stats = match cache.get(&hour) {
            Some(s) => *s,
            None => {
                let s = model.stats(&key())?;
                cache.insert(hour, s);
                s
            }
        };
        let score = stats.score(v, polarity);
        out.push(ScoredWindow {
            window_start: p.window_start,
            score,
            flagged: score.score >= tau && score.degrading && score.sufficient_data,
        });
    }
    Ok(out)
}

/// Adds per-key counts across models; keys are unioned.
pub fn merge_baselines(models: &[BaselineModel]) -> Result<BaselineModel, DetectError> {
    let (first, rest) = models
        .split_first()
        .ok_or_else(|| DetectError::IncompatibleModel("nothing to merge".into()))?;
    let mut out = first.clone();
    for m in rest {
        merge_into(&mut out, m)?;
    }
    Ok(out)
}

pub fn merge_into(acc: &mut BaselineModel, other: &BaselineModel) -> Result<(), DetectError> {
    if acc.config != other.config {
        return Err(DetectError::IncompatibleModel("configs differ".into()));
    }
    for (metric, p) in &other.polarities {
        match acc.polarities.get(metric) {
            Some(q) if q != p => {
                return Err(DetectError::IncompatibleModel(format!(
                    "metric `{metric}` has conflicting polarities"
                )))
            }
            Some(_) => {}
            None => {
                acc.polarities.insert(metric.clone(), *p);
            }
        }
    }
    for (key, sketch) in &other.sketches {
        match acc.sketches.get_mut(key) {
            Some(s) => s.merge(sketch)?,
            None => {
                acc.sketches.insert(key.clone(), sketch.clone());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{MetricKind, Point};
    use proptest::prelude::*;

    fn series(metric: &str, polarity: Polarity, start: i64, step: i64, vals: &[f64]) -> MetricSeries {
        MetricSeries::new("c1", metric, MetricKind::Kqi, polarity, step).with_points(
            vals.iter()
                .enumerate()
                .map(|(i, v)| Point::new(start + i as i64 * step, Some(*v)))
                .collect(),
        )
    }

    fn hourly(vals: &[f64]) -> MetricSeries {
        series("m", Polarity::HigherIsWorse, 0, 3600, vals)
    }

    #[test]
    fn hour_partitioning() {
        let vals: Vec<f64> = (0..48).map(|i| i as f64).collect();
        let m = fit_baseline(&[hourly(&vals)], &BaselineConfig::default()).unwrap();
        assert_eq!(m.len(), 24);
        assert!(m.sketches.values().all(|s| s.total() == 2));
        assert!(!m.stats(&SeriesKey::new("c1", "m", 3)).unwrap().sufficient);
    }

    #[test]
    fn constant_baseline() {
        let m = fit_baseline(&[hourly(&[7.0; 48])], &BaselineConfig::default()).unwrap();
        let key = SeriesKey::new("c1", "m", 0);
        let sk = &m.sketches[&key];
        assert_eq!(sk.counts.iter().filter(|&&c| c > 0).count(), 1);
        let st = m.stats(&key).unwrap();
        assert_eq!((st.median, st.mad), (7.0, 0.0));
        let s = robust_score(&m, &key, 7.0).unwrap();
        assert_eq!((s.score, s.direction, s.degrading), (0.0, Direction::None, false));
        let s = robust_score(&m, &key, 7.5).unwrap();
        assert!(s.score.is_finite() && s.score > 1e6);
    }

    #[test]
    fn small_sample_within_one_bin() {
        let data = [1.0, 2.0, 3.0, 4.0, 100.0];
        let s = series("m", Polarity::HigherIsWorse, 0, 86_400, &data);
        let m = fit_baseline(&[s], &BaselineConfig::default()).unwrap();
        let key = SeriesKey::new("c1", "m", 0);
        let w = m.sketches[&key].bin_width();
        let st = m.stats(&key).unwrap();
        let ex = exact::ExactBaseline::from_values(&data).unwrap();
        assert!((st.median - 3.0).abs() <= w);
        assert!((st.mad - 1.0).abs() <= w);
        let hist = robust_score(&m, &key, 100.0).unwrap();
        assert!((ex.score(100.0) - 97.0 / (1.4826 + 1e-9)).abs() < 1e-9);
        // One bin of shift in median or MAD moves the score by a bounded amount.
        let lo = (100.0 - 3.0 - w) / (1.4826 * (1.0 + w));
        let hi = (100.0 - 3.0 + w) / (1.4826 * (1.0 - w));
        assert!(
            hist.score >= lo && hist.score <= hi,
            "{} not in [{lo}, {hi}]",
            hist.score
        );
    }

    #[test]
    fn polarity_gate() {
        let base: Vec<f64> = (0..40).map(|i| 10.0 + (i % 5) as f64).collect();
        for (pol, expect) in [(Polarity::HigherIsWorse, true), (Polarity::LowerIsWorse, false)] {
            let train = series("m", pol, 0, 86_400, &base);
            let m = fit_baseline(&[train], &BaselineConfig::default()).unwrap();
            let st = m.stats(&SeriesKey::new("c1", "m", 0)).unwrap();
            let spike = st.median + 10.0 * MAD_CONSISTENCY * st.mad;
            let test = series("m", pol, 40 * 86_400, 86_400, &[st.median, spike]);
            let out = score_series(&m, &test, 5.0).unwrap();
            assert!(!out[0].flagged);
            assert_eq!(out[1].flagged, expect);
            assert_eq!(out[1].score.degrading, expect);
        }
    }

    #[test]
    fn missing_points_unflagged() {
        let m = fit_baseline(&[hourly(&[1.0; 24])], &BaselineConfig::default()).unwrap();
        let mut t = hourly(&[1.0]);
        t.points[0].value = None;
        let out = score_series(&m, &t, 5.0).unwrap();
        assert_eq!(out[0].score, AnomalyScore::missing());
        assert!(!out[0].flagged);
    }

    #[test]
    fn unknown_key() {
        let m = fit_baseline(&[hourly(&[1.0; 24])], &BaselineConfig::default()).unwrap();
        let t = series("other", Polarity::HigherIsWorse, 0, 3600, &[1.0]);
        assert!(matches!(score_series(&m, &t, 5.0), Err(DetectError::UnknownKey(_))));
        let k = SeriesKey::new("c9", "m", 0);
        assert!(matches!(robust_score(&m, &k, 1.0), Err(DetectError::UnknownKey(_))));
    }

    #[test]
    fn empty_training_and_bad_config() {
        assert!(matches!(
            fit_baseline(&[], &BaselineConfig::default()),
            Err(DetectError::EmptyTraining)
        ));
        let cfg = BaselineConfig {
            bin_count: 4,
            ..Default::default()
        };
        assert!(fit_baseline(&[hourly(&[1.0])], &cfg).is_err());
    }

    #[test]
    fn merge_identity_and_additivity() {
        let cfg = BaselineConfig {
            fixed_bounds: [("m".to_string(), [0.0, 2.0])].into(),
            bin_count: 8,
            ..Default::default()
        };
        let m = fit_baseline(&[hourly(&[0.1, 1.9])], &cfg).unwrap();
        let merged = merge_baselines(&[m.clone(), BaselineModel::empty(cfg.clone())]).unwrap();
        assert_eq!(merged, m);

        let a = fit_baseline(&[hourly(&[0.1])], &cfg).unwrap();
        let b = fit_baseline(&[hourly(&[1.9])], &cfg).unwrap();
        let ab = merge_baselines(&[a, b]).unwrap();
        let pooled = fit_baseline(&[hourly(&[0.1]), hourly(&[1.9])], &cfg).unwrap();
        assert_eq!(ab, pooled);
        assert_eq!(ab.sketches[&SeriesKey::new("c1", "m", 0)].total(), 2);
    }

    #[test]
    fn merge_rejects_mismatch() {
        let a = fit_baseline(&[hourly(&[0.0, 1.0])], &BaselineConfig::default()).unwrap();
        let b = fit_baseline(&[hourly(&[5.0, 9.0])], &BaselineConfig::default()).unwrap();
        assert!(matches!(
            merge_baselines(&[a.clone(), b]),
            Err(DetectError::IncompatibleSketch(_))
        ));
        let other_cfg = BaselineModel::empty(BaselineConfig {
            tau: 3.0,
            ..Default::default()
        });
        assert!(matches!(
            merge_baselines(&[a, other_cfg]),
            Err(DetectError::IncompatibleModel(_))
        ));
    }

    #[test]
    fn json_round_trip_and_schema() {
        let m = fit_baseline(&[hourly(&[1.0, 2.0, 3.5])], &BaselineConfig::default()).unwrap();
        let text = m.to_json();
        let back = BaselineModel::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
        let bad = text.replacen("\"schema_version\":1", "\"schema_version\":7", 1);
        assert!(matches!(
            BaselineModel::from_json(&bad),
            Err(DetectError::SchemaMismatch { found: 7, .. })
        ));
    }

    fn arb_model() -> impl Strategy<Value = BaselineModel> {
        let cfg = BaselineConfig {
            fixed_bounds: [("m".to_string(), [0.0, 10.0])].into(),
            bin_count: 8,
            ..Default::default()
        };
        prop::collection::vec((0u8..3, 0u8..4, -1.0f64..11.0), 0..30).prop_map(move |pts| {
            let series: Vec<MetricSeries> = pts
                .into_iter()
                .map(|(cell, hour, v)| MetricSeries {
                    cell_id: format!("c{cell}"),
                    ..series("m", Polarity::HigherIsWorse, hour as i64 * 3600, 3600, &[v])
                })
                .collect();
            if series.is_empty() {
                BaselineModel::empty(cfg.clone())
            } else {
                fit_baseline(&series, &cfg).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn merge_commutes_and_associates(a in arb_model(), b in arb_model(), c in arb_model()) {
            let ab = merge_baselines(&[a.clone(), b.clone()]).unwrap();
            let ba = merge_baselines(&[b.clone(), a.clone()]).unwrap();
            prop_assert_eq!(&ab, &ba);
            let ab_c = merge_baselines(&[ab, c.clone()]).unwrap();
            let bc = merge_baselines(&[b, c]).unwrap();
            let a_bc = merge_baselines(&[a, bc]).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn flagged_implies_degrading(
            train in prop::collection::vec(0.0f64..100.0, 5..60),
            test in prop::collection::vec(-100.0f64..300.0, 1..30),
            lower in any::<bool>(),
        ) {
            let pol = if lower { Polarity::LowerIsWorse } else { Polarity::HigherIsWorse };
            let m = fit_baseline(&[series("m", pol, 0, 86_400, &train)], &BaselineConfig { min_samples: 1, ..Default::default() }).unwrap();
            let t = series("m", pol, 0, 86_400, &test);
            for w in score_series(&m, &t, 1.0).unwrap() {
                prop_assert!(!w.flagged || (w.score.degrading && w.score.direction != Direction::None));
                prop_assert!(w.score.score >= 0.0);
            }
        }
    }
}
