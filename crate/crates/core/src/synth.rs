//! Seeded synthetic telemetry with planted anomalies and planted causes,
//! plus an evaluator scoring detections and diagnoses against the plan.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`): stream 0 of the seed
//! draws cause assignments, stream `i + 1` draws everything for cell `i`,
//! so output is identical across platforms and independent of cell
//! generation order.
//!
//! Metric values follow a per-cell level, a diurnal sinusoid held constant
//! within each UTC hour and normal noise truncated at ±4σ. A planted anomaly shifts its KQI by
//! `magnitude * 1.4826 * MAD` in the degrading direction, where MAD is the
//! exact median absolute deviation of the truncated noise; the cause drawn
//! for it shifts its KPI symptoms the same way in the same windows.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal, Poisson};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal as StdNormal};
use thiserror::Error;

use crate::baseline::MAD_CONSISTENCY;
use crate::config::RunConfig;
use crate::fingerprint::{Fingerprint, Itemset, LabelMap, SymptomItem, SymptomState};
use crate::ingest::{self, CatalogEntry, CdrRecord, MetricCatalog, MetricKind, MetricSeries, Point, Polarity};
use crate::postfilter::AnomalyEvent;
use crate::rca::DiagnosedEvent;

const TRUNCATION: f64 = 4.0;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid scenario spec: {0}")]
    InvalidSpec(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Ingest(#[from] ingest::IngestError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSpec {
    pub name: String,
    pub kind: MetricKind,
    pub polarity: Polarity,
    pub base: f64,
    pub diurnal_amplitude: f64,
    pub sigma: f64,
    /// Per-cell level is `base * (1 + u * level_spread)`, u uniform in [-1, 1].
    pub level_spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdrSpec {
    pub calls_per_window: f64,
    pub drop_probability: f64,
    pub mean_duration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedAnomaly {
    pub cell: usize,
    pub kqi: String,
    /// Index into the window grid.
    pub start: usize,
    /// Number of windows.
    pub duration: usize,
    /// Shift in units of `1.4826 * MAD`.
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausePlan {
    pub cause_label: String,
    pub symptoms: Itemset,
    pub kqi: String,
    pub symptom_magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScenarioSpec {
    pub n_cells: usize,
    pub days: usize,
    pub window_len: i64,
    /// Epoch seconds of the first window; a multiple of one day.
    pub start_time: i64,
    /// Anomalies must start at or after this fraction of the grid.
    pub train_fraction: f64,
    /// Fraction of training-span values written as missing.
    pub missing_rate: f64,
    /// Fraction of training-span values replaced by gross corruption.
    pub corruption_rate: f64,
    pub metrics: Vec<MetricSpec>,
    pub cdr: Option<CdrSpec>,
    pub anomalies: Vec<PlannedAnomaly>,
    pub causes: Vec<CausePlan>,
    pub seed: u64,
}

fn metric(
    name: &str,
    kind: MetricKind,
    polarity: Polarity,
    base: f64,
    amp: f64,
    sigma: f64,
    spread: f64,
) -> MetricSpec {
    MetricSpec {
        name: name.into(),
        kind,
        polarity,
        base,
        diurnal_amplitude: amp,
        sigma,
        level_spread: spread,
    }
}

impl Default for ScenarioSpec {
    /// 50 cells, 14 days of 5-minute windows, 12 anomalies at 8 MAD-units,
    /// 4 causes.
    fn default() -> Self {
        use MetricKind::{Kpi, Kqi};
        use Polarity::{HigherIsWorse as Hi, LowerIsWorse as Lo};
        let metrics = vec![
            metric("web_delay", Kqi, Hi, 120.0, 30.0, 10.0, 0.2),
            metric("dl_throughput", Kqi, Lo, 20.0, 5.0, 1.5, 0.2),
            metric("video_stall_ratio", Kqi, Hi, 2.0, 0.5, 0.3, 0.2),
            metric("call_setup_success", Kqi, Lo, 97.0, 0.5, 0.4, 0.01),
            metric("prb_utilization", Kpi, Hi, 50.0, 15.0, 5.0, 0.2),
            metric("rtt", Kpi, Hi, 40.0, 8.0, 3.0, 0.2),
            metric("packet_loss", Kpi, Hi, 0.5, 0.1, 0.08, 0.2),
            metric("sinr", Kpi, Lo, 15.0, 2.0, 1.2, 0.2),
            metric("bler", Kpi, Hi, 8.0, 1.0, 0.8, 0.2),
            metric("cpu_load", Kpi, Hi, 40.0, 10.0, 4.0, 0.2),
        ];
        let cause = |label: &str, symptoms: Vec<SymptomItem>, kqi: &str| CausePlan {
            cause_label: label.into(),
            symptoms: {
                let mut s = symptoms;
                s.sort();
                s
            },
            kqi: kqi.into(),
            symptom_magnitude: 8.0,
        };
        let causes = vec![
            cause(
                "congestion",
                vec![SymptomItem::high("prb_utilization"), SymptomItem::high("rtt")],
                "web_delay",
            ),
            cause(
                "backhaul_degradation",
                vec![SymptomItem::high("packet_loss"), SymptomItem::high("rtt")],
                "web_delay",
            ),
            cause(
                "radio_interference",
                vec![SymptomItem::low("sinr"), SymptomItem::high("bler")],
                "dl_throughput",
            ),
            cause(
                "baseband_overload",
                vec![SymptomItem::high("cpu_load"), SymptomItem::high("bler")],
                "dl_throughput",
            ),
        ];
        let mut spec = ScenarioSpec {
            n_cells: 50,
            days: 14,
            window_len: 300,
            start_time: 1_699_920_000,
            train_fraction: 0.7,
            missing_rate: 0.002,
            corruption_rate: 0.0005,
            metrics,
            cdr: Some(CdrSpec {
                calls_per_window: 6.0,
                drop_probability: 0.2,
                mean_duration: 90.0,
            }),
            anomalies: Vec::new(),
            causes,
            seed: 7,
        };
        spec.anomalies = spec.spread_anomalies(12, &["web_delay", "dl_throughput"], 6, 8.0);
        spec
    }
}

impl ScenarioSpec {
    pub fn n_windows(&self) -> usize {
        (self.days as i64 * 86_400 / self.window_len) as usize
    }

    /// First grid index of the detection span.
    pub fn test_start(&self) -> usize {
        crate::cleaning::train_len(self.n_windows(), self.train_fraction)
    }

    pub fn cell_id(i: usize) -> String {
        format!("cell{i:03}")
    }

    pub fn cell_ids(&self) -> Vec<String> {
        (0..self.n_cells).map(Self::cell_id).collect()
    }

    /// `count` anomalies on distinct cells (while cells last), alternating
    /// over `kqis`, spread evenly across the test span.
    pub fn spread_anomalies(
        &self,
        count: usize,
        kqis: &[&str],
        duration: usize,
        magnitude: f64,
    ) -> Vec<PlannedAnomaly> {
        let start = self.test_start() + 2;
        let span = self.n_windows().saturating_sub(start + duration + 2);
        let stride = if self.n_cells > 1 {
            (self.n_cells * 7 / 10).max(1)
        } else {
            0
        };
        (0..count)
            .map(|i| PlannedAnomaly {
                cell: (i * stride + i / self.n_cells.max(1)) % self.n_cells.max(1),
                kqi: kqis[i % kqis.len()].to_string(),
                start: start + if count > 1 { span * i / (count - 1) } else { 0 },
                duration,
                magnitude,
            })
            .collect()
    }

    pub fn without_anomalies(mut self) -> Self {
        self.anomalies.clear();
        self
    }

    fn metric_spec(&self, name: &str) -> Option<&MetricSpec> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: String| Err(SynthError::InvalidSpec(m));
        if self.n_cells == 0 || self.days == 0 {
            return bad("n_cells and days must be positive".into());
        }
        if self.window_len <= 0 || 86_400 % self.window_len != 0 {
            return bad("window_len must divide one day".into());
        }
        if self.start_time.rem_euclid(86_400) != 0 {
            return bad("start_time must fall on a day boundary".into());
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return bad("train_fraction must lie in (0, 1)".into());
        }
        for r in [self.missing_rate, self.corruption_rate] {
            if !(0.0..0.5).contains(&r) {
                return bad("missing/corruption rates must lie in [0, 0.5)".into());
            }
        }
        let mut names = BTreeSet::new();
        for m in &self.metrics {
            if !names.insert(m.name.as_str()) {
                return bad(format!("metric `{}` declared twice", m.name));
            }
            if !(m.sigma > 0.0) {
                return bad(format!("metric `{}` needs sigma > 0", m.name));
            }
            if !(0.0..1.0).contains(&m.level_spread) {
                return bad(format!("metric `{}` needs level_spread in [0, 1)", m.name));
            }
            if [ingest::CALL_ATTEMPTS, ingest::DROP_RATE, ingest::MEAN_DURATION].contains(&m.name.as_str()) {
                return bad(format!("metric name `{}` is reserved for CDR aggregates", m.name));
            }
        }
        if let Some(c) = &self.cdr {
            if !(c.calls_per_window > 0.0 && (0.0..=1.0).contains(&c.drop_probability) && c.mean_duration > 0.0) {
                return bad("cdr parameters out of range".into());
            }
        }
        for c in &self.causes {
            match self.metric_spec(&c.kqi) {
                Some(m) if m.kind == MetricKind::Kqi => {}
                _ => return bad(format!("cause `{}` targets unknown KQI `{}`", c.cause_label, c.kqi)),
            }
            if c.symptoms.is_empty() || !(c.symptom_magnitude > 0.0) {
                return bad(format!(
                    "cause `{}` needs symptoms and a positive magnitude",
                    c.cause_label
                ));
            }
            for s in &c.symptoms {
                match self.metric_spec(&s.metric_name) {
                    Some(m) if m.kind == MetricKind::Kpi => {}
                    _ => {
                        return bad(format!(
                            "cause `{}` uses unknown KPI `{}`",
                            c.cause_label, s.metric_name
                        ))
                    }
                }
            }
        }
        let (lo, hi) = (self.test_start(), self.n_windows());
        let mut per_cell: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for a in &self.anomalies {
            match self.metric_spec(&a.kqi) {
                Some(m) if m.kind == MetricKind::Kqi => {}
                _ => return bad(format!("anomaly targets unknown KQI `{}`", a.kqi)),
            }
            if a.cell >= self.n_cells {
                return bad(format!("anomaly cell {} out of range", a.cell));
            }
            if !(a.magnitude > 0.0) || a.duration == 0 {
                return bad("anomalies need positive magnitude and duration".into());
            }
            if a.start < lo || a.start + a.duration > hi {
                return bad(format!(
                    "anomaly at window {} must lie inside the test span [{lo}, {hi})",
                    a.start
                ));
            }
            per_cell
                .entry(a.cell)
                .or_default()
                .push((a.start, a.start + a.duration));
        }
        for spans in per_cell.values_mut() {
            spans.sort();
            if spans.windows(2).any(|w| w[1].0 < w[0].1) {
                return bad("anomalies overlap within one cell".into());
            }
        }
        Ok(())
    }

    /// Catalog with declared value ranges for every generated metric.
    pub fn catalog(&self) -> MetricCatalog {
        let mut catalog = MetricCatalog::default();
        for m in &self.metrics {
            let s = m.level_spread;
            let reach = m.diurnal_amplitude.abs() + TRUNCATION * m.sigma;
            let (a, b) = (m.base * (1.0 - s), m.base * (1.0 + s));
            let (lo, hi) = (a.min(b) - reach, a.max(b) + reach);
            let pad = 0.05 * (hi - lo);
            catalog.insert(
                m.name.clone(),
                CatalogEntry {
                    kind: m.kind,
                    polarity: m.polarity,
                    window_len_seconds: self.window_len,
                    range: Some([lo - pad, hi + pad]),
                },
            );
        }
        if let Some(c) = &self.cdr {
            let ranges = [
                [0.0, c.calls_per_window + 10.0 * c.calls_per_window.sqrt() + 10.0],
                [0.0, 1.0],
                [0.0, 8.0 * c.mean_duration],
            ];
            for ((name, mut entry), range) in ingest::cdr_catalog_entries(self.window_len).into_iter().zip(ranges) {
                entry.range = Some(range);
                catalog.insert(name, entry);
            }
        }
        catalog
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedEvent {
    pub cell_id: String,
    pub kqi: String,
    pub start_window: i64,
    /// Start of the last anomalous window.
    pub end_window: i64,
    pub cause_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedRule {
    pub cause_label: String,
    pub symptoms: Itemset,
    pub kqi: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub planted_events: Vec<PlantedEvent>,
    pub planted_rules: Vec<PlantedRule>,
}

impl GroundTruth {
    /// Labels every rule whose antecedent lies inside the symptom pattern of
    /// exactly one planted cause for the same KQI.
    pub fn labels_for(&self, rules: &[Fingerprint]) -> LabelMap {
        let mut out = LabelMap::new();
        for r in rules {
            let causes: BTreeSet<&str> = self
                .planted_rules
                .iter()
                .filter(|p| p.kqi == r.consequent && r.antecedent.iter().all(|i| p.symptoms.contains(i)))
                .map(|p| p.cause_label.as_str())
                .collect();
            if causes.len() == 1 {
                out.insert(r.key(), causes.into_iter().next().unwrap().to_string());
            }
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self, SynthError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        serde_json::from_str(&text).map_err(|e| SynthError::InvalidSpec(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedScenario {
    pub catalog: MetricCatalog,
    pub cdr: Vec<CdrRecord>,
    pub kqi: Vec<MetricSeries>,
    pub kpi: Vec<MetricSeries>,
    pub truth: GroundTruth,
}

pub const CDR_FILE: &str = "cdr.csv";
pub const KQI_FILE: &str = "kqi.csv";
pub const KPI_FILE: &str = "kpi.csv";
pub const CATALOG_FILE: &str = "catalog.json";
pub const TRUTH_FILE: &str = "truth.json";

fn io_err(path: &Path, source: std::io::Error) -> SynthError {
    SynthError::Io {
        path: path.display().to_string(),
        source,
    }
}

impl GeneratedScenario {
    /// Writes the three CSV files, the catalog and the ground truth.
    pub fn write_dir(&self, dir: &Path) -> Result<(), SynthError> {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let create = |name: &str| {
            let p = dir.join(name);
            std::fs::File::create(&p)
                .map(std::io::BufWriter::new)
                .map_err(|e| io_err(&p, e))
        };
        ingest::write_cdr(&self.cdr, create(CDR_FILE)?)?;
        ingest::write_metric_csv(&self.kqi, create(KQI_FILE)?)?;
        ingest::write_metric_csv(&self.kpi, create(KPI_FILE)?)?;
        self.catalog.save(&dir.join(CATALOG_FILE))?;
        let truth = dir.join(TRUTH_FILE);
        let mut text = serde_json::to_string_pretty(&self.truth).expect("truth serializes");
        text.push('\n');
        std::fs::write(&truth, text).map_err(|e| io_err(&truth, e))
    }
}

/// Median absolute deviation of N(0, σ²) truncated to ±4σ.
pub fn truncated_mad(sigma: f64) -> f64 {
    let n = StdNormal::new(0.0, 1.0).expect("unit normal");
    let mass = 2.0 * n.cdf(TRUNCATION) - 1.0;
    sigma * n.inverse_cdf(0.5 + 0.25 * mass)
}

fn round4(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

struct CellPlan<'a> {
    /// (grid start, grid end exclusive, kqi, magnitude, cause)
    anomalies: Vec<(usize, usize, &'a MetricSpec, f64, Option<&'a CausePlan>)>,
}

pub fn generate(spec: &ScenarioSpec, seed: u64) -> Result<GeneratedScenario, SynthError> {
    spec.validate()?;
    let n = spec.n_windows();
    let catalog = spec.catalog();

    // Balanced cause draw per KQI: a seeded shuffle dealt round-robin.
    let mut plan_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut causes_of: Vec<Option<&CausePlan>> = vec![None; spec.anomalies.len()];
    let kqis: BTreeSet<&str> = spec.anomalies.iter().map(|a| a.kqi.as_str()).collect();
    for kqi in kqis {
        let options: Vec<&CausePlan> = spec.causes.iter().filter(|c| c.kqi == kqi).collect();
        if options.is_empty() {
            continue;
        }
        let mut idx: Vec<usize> = (0..spec.anomalies.len())
            .filter(|&i| spec.anomalies[i].kqi == kqi)
            .collect();
        for i in (1..idx.len()).rev() {
            let j = plan_rng.random_range(0..=i);
            idx.swap(i, j);
        }
        for (k, i) in idx.into_iter().enumerate() {
            causes_of[i] = Some(options[k % options.len()]);
        }
    }

    let mut plans: Vec<CellPlan> = (0..spec.n_cells).map(|_| CellPlan { anomalies: Vec::new() }).collect();
    let mut planted_events = Vec::new();
    for (a, cause) in spec.anomalies.iter().zip(&causes_of) {
        let m = spec.metric_spec(&a.kqi).expect("validated");
        plans[a.cell]
            .anomalies
            .push((a.start, a.start + a.duration, m, a.magnitude, *cause));
        planted_events.push(PlantedEvent {
            cell_id: ScenarioSpec::cell_id(a.cell),
            kqi: a.kqi.clone(),
            start_window: spec.start_time + a.start as i64 * spec.window_len,
            end_window: spec.start_time + (a.start + a.duration - 1) as i64 * spec.window_len,
            cause_label: cause.map(|c| c.cause_label.clone()),
        });
    }
    planted_events.sort_by(|a, b| (&a.cell_id, &a.kqi, a.start_window).cmp(&(&b.cell_id, &b.kqi, b.start_window)));

    let noise = Normal::new(0.0, 1.0).expect("unit normal");
    let test_start = spec.test_start();
    let mut kqi = Vec::new();
    let mut kpi = Vec::new();
    let mut cdr = Vec::new();
    for (c, plan) in plans.iter().enumerate() {
        let cell_id = ScenarioSpec::cell_id(c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64 + 1);

        for m in &spec.metrics {
            let level = m.base * (1.0 + m.level_spread * rng.random_range(-1.0..=1.0));
            let shift_unit = MAD_CONSISTENCY * truncated_mad(m.sigma);
            let mut points = Vec::with_capacity(n);
            for i in 0..n {
                let t = spec.start_time + i as i64 * spec.window_len;
                // constant within each UTC hour
                let hour = (t.rem_euclid(86_400) / 3600) as f64;
                let mu = level + m.diurnal_amplitude * (2.0 * PI * (hour + 0.5) / 24.0).sin();
                let z = loop {
                    let z: f64 = noise.sample(&mut rng);
                    if z.abs() <= TRUNCATION {
                        break z;
                    }
                };
                let mut v = mu + m.sigma * z;
                let u: f64 = rng.random();
                let mut planted = false;
                for &(s, e, kq, mag, cause) in &plan.anomalies {
                    if i < s || i >= e {
                        continue;
                    }
                    if kq.name == m.name {
                        let sign = if m.polarity == Polarity::HigherIsWorse {
                            1.0
                        } else {
                            -1.0
                        };
                        v += sign * mag * shift_unit;
                        planted = true;
                    }
                    if let Some(cause) = cause {
                        for sym in cause.symptoms.iter().filter(|s| s.metric_name == m.name) {
                            let sign = if sym.state == SymptomState::High { 1.0 } else { -1.0 };
                            v += sign * cause.symptom_magnitude * shift_unit;
                            planted = true;
                        }
                    }
                }
                let value = if i < test_start && !planted && u < spec.missing_rate {
                    None
                } else if i < test_start && !planted && u < spec.missing_rate + spec.corruption_rate {
                    Some(round4(level.abs().max(1.0) * 1e3))
                } else {
                    Some(round4(v))
                };
                points.push(Point::new(t, value));
            }
            let series = MetricSeries::new(&cell_id, &m.name, m.kind, m.polarity, spec.window_len).with_points(points);
            match m.kind {
                MetricKind::Kqi => kqi.push(series),
                MetricKind::Kpi => kpi.push(series),
            }
        }

        if let Some(cs) = &spec.cdr {
            let calls = Poisson::new(cs.calls_per_window).expect("positive rate");
            let dur = Exp::new(1.0 / cs.mean_duration).expect("positive mean");
            for i in 0..n {
                let t = spec.start_time + i as i64 * spec.window_len;
                let k = calls.sample(&mut rng) as usize;
                let mut window: Vec<CdrRecord> = (0..k)
                    .map(|_| CdrRecord {
                        cell_id: cell_id.clone(),
                        start_time: t + rng.random_range(0..spec.window_len),
                        duration: dur.sample(&mut rng).round() as u64,
                        dropped: rng.random_bool(cs.drop_probability),
                        source_hash: format!("h{:08x}", rng.random::<u32>()),
                        dest_hash: format!("h{:08x}", rng.random::<u32>()),
                    })
                    .collect();
                window.sort_by_key(|r| r.start_time);
                cdr.extend(window);
            }
        }
    }
    kqi.sort_by(|a, b| (&a.cell_id, &a.metric_name).cmp(&(&b.cell_id, &b.metric_name)));
    kpi.sort_by(|a, b| (&a.cell_id, &a.metric_name).cmp(&(&b.cell_id, &b.metric_name)));

    Ok(GeneratedScenario {
        catalog,
        cdr,
        kqi,
        kpi,
        truth: GroundTruth {
            planted_events,
            planted_rules: spec
                .causes
                .iter()
                .map(|c| PlantedRule {
                    cause_label: c.cause_label.clone(),
                    symptoms: c.symptoms.clone(),
                    kqi: c.kqi.clone(),
                })
                .collect(),
        },
    })
}

/// Run config for scenarios with a handful of planted anomalies. With about
/// a dozen transactions the default rarity band is empty, so rules need
/// only two supporting transactions and may cover up to 30% of them.
pub fn planted_run_config(seed: u64) -> RunConfig {
    let mut cfg = RunConfig {
        seed,
        ..RunConfig::default()
    };
    cfg.mine.s_min_count = 2;
    cfg.mine.s_max_fraction = 0.3;
    cfg
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub detected: usize,
    pub planted: usize,
    pub matched_detected: usize,
    pub matched_planted: usize,
    /// 1.0 when nothing was detected.
    pub precision: f64,
    /// 1.0 when nothing was planted.
    pub recall: f64,
    pub rca_evaluated: usize,
    pub rca_correct: usize,
    /// Over detected events that match a labeled planted event and whose
    /// diagnosis matched; 1.0 when there are none.
    pub rca_top1_accuracy: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Event-level scoring: a detection matches a planted event on the same
/// (cell, KQI) whose window span overlaps it.
pub fn evaluate(events: &[AnomalyEvent], diagnoses: &[DiagnosedEvent], truth: &GroundTruth) -> EvalReport {
    let matching = |e: &AnomalyEvent| {
        truth
            .planted_events
            .iter()
            .find(|p| p.cell_id == e.cell_id && p.kqi == e.metric_name && e.overlaps(p.start_window, p.end_window))
    };
    let matched_detected = events.iter().filter(|e| matching(e).is_some()).count();
    let matched_planted = truth
        .planted_events
        .iter()
        .filter(|p| {
            events
                .iter()
                .any(|e| p.cell_id == e.cell_id && p.kqi == e.metric_name && e.overlaps(p.start_window, p.end_window))
        })
        .count();

    let mut rca_evaluated = 0;
    let mut rca_correct = 0;
    for d in diagnoses {
        let Some(planted) = matching(&d.event) else { continue };
        let Some(label) = planted.cause_label.as_deref() else {
            continue;
        };
        if !d.diagnosis.matched {
            continue;
        }
        rca_evaluated += 1;
        if d.diagnosis.top_label() == Some(label) {
            rca_correct += 1;
        }
    }

    EvalReport {
        detected: events.len(),
        planted: truth.planted_events.len(),
        matched_detected,
        matched_planted,
        precision: ratio(matched_detected, events.len()),
        recall: ratio(matched_planted, truth.planted_events.len()),
        rca_evaluated,
        rca_correct,
        rca_top1_accuracy: ratio(rca_correct, rca_evaluated),
    }
}
