//! Static flow accounting for three placements of the pipeline on a
//! cloud → fog → edge tree.
//!
//! Each transfer costs `bytes / bandwidth + latency` per hop; node compute
//! time is zero under every strategy, so reports compare network cost only.
//! Record sizes are fixed constants from the run config rather than
//! measured encodings, except for models, count tables and databases,
//! which are charged at their JSON size.
//!
//! | strategy | training | inference | mining | diagnosis |
//! |---|---|---|---|---|
//! | `CENTRALIZED` | cloud, on all raw data | cloud | cloud | cloud |
//! | `EDGE_INFERENCE` | cloud, on raw training data | edge | cloud | edge |
//! | `FOG` | per-fog partitions, merged at cloud | edge | per-fog counts, merged at cloud | fog |
//!
//! All three return the same model and fingerprint db; only the cost
//! profile differs.

mod topology;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::baseline::{merge_baselines, BaselineConfig, BaselineModel};
use crate::cleaning::train_len;
use crate::config::RunConfig;
use crate::fingerprint::{build_transactions, mine_rare_rules, FingerprintDb, ItemsetCounts, LabelMap, Transaction};
use crate::ingest::{self, MetricSeries};
use crate::pipeline::{self, baseline_config, Dataset, Prepared};
use crate::postfilter::AnomalyEvent;
use crate::synth::GroundTruth;
use crate::Error;

pub use topology::{
    balanced_spec, build_topology, FogTopology, Link, LinkSpec, NodeSpec, Tier, TopologySpec, DEFAULT_EDGE_LINK,
    DEFAULT_FOG_LINK,
};

#[derive(Debug, ThisError)]
pub enum FogError {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("cell `{0}` is not assigned to any edge node")]
    UnassignedCell(String),
    #[error("metric `{0}` has no declared range; fog merging needs fixed sketch bounds")]
    UnboundedMetric(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DeploymentStrategy {
    Centralized,
    EdgeInference,
    Fog,
}

impl DeploymentStrategy {
    pub const ALL: [DeploymentStrategy; 3] = [Self::Centralized, Self::EdgeInference, Self::Fog];

    fn name(self) -> &'static str {
        match self {
            Self::Centralized => "CENTRALIZED",
            Self::EdgeInference => "EDGE_INFERENCE",
            Self::Fog => "FOG",
        }
    }
}

impl fmt::Display for DeploymentStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DeploymentStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|d| d.name() == norm)
            .ok_or_else(|| format!("unknown strategy `{s}` (expected centralized, edge_inference or fog)"))
    }
}

/// Serialized sizes charged per record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RecordSizes {
    pub cdr_record_bytes: u64,
    pub metric_row_bytes: u64,
    pub transaction_bytes: u64,
    pub alert_bytes: u64,
}

impl Default for RecordSizes {
    fn default() -> Self {
        RecordSizes {
            cdr_record_bytes: 64,
            metric_row_bytes: 32,
            transaction_bytes: 64,
            alert_bytes: 128,
        }
    }
}

impl RecordSizes {
    pub fn validate(&self) -> Result<(), String> {
        let all = [
            self.cdr_record_bytes,
            self.metric_row_bytes,
            self.transaction_bytes,
            self.alert_bytes,
        ];
        if all.contains(&0) {
            return Err("record sizes must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    Up,
    Down,
}

/// Bytes moved over one link in one phase and direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flow {
    pub phase: String,
    pub child: String,
    pub parent: String,
    pub direction: Direction,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkCost {
    pub child: String,
    pub parent: String,
    pub bytes_up: u64,
    pub bytes_down: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCost {
    pub phase: String,
    pub bytes_up: u64,
    pub bytes_down: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventLatency {
    pub cell_id: String,
    pub metric_name: String,
    pub start_window: i64,
    pub latency_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub strategy: DeploymentStrategy,
    /// In phase order, then by link.
    pub flows: Vec<Flow>,
    pub links: Vec<LinkCost>,
    pub phases: Vec<PhaseCost>,
    pub total_bytes: u64,
    pub events: Vec<EventLatency>,
    pub mean_latency_s: f64,
    pub max_latency_s: f64,
    /// Pipeline stage → tier where it runs.
    pub model_location: BTreeMap<String, Tier>,
}

impl CostReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutput {
    pub report: CostReport,
    pub model: BaselineModel,
    pub db: FingerprintDb,
    pub events: Vec<AnomalyEvent>,
}

pub fn compare_models(a: &BaselineModel, b: &BaselineModel) -> bool {
    a == b
}

pub fn compare_dbs(a: &FingerprintDb, b: &FingerprintDb) -> bool {
    a == b
}

/// Flow ledger. Phases keep first-use order.
struct Accounts<'t> {
    topo: &'t FogTopology,
    phases: Vec<String>,
    flows: BTreeMap<(usize, String, Direction), u64>,
}

impl<'t> Accounts<'t> {
    fn new(topo: &'t FogTopology) -> Self {
        Accounts {
            topo,
            phases: Vec::new(),
            flows: BTreeMap::new(),
        }
    }

    fn add(&mut self, phase: &str, child: &str, direction: Direction, bytes: u64) {
        if bytes == 0 {
            return;
        }
        let idx = match self.phases.iter().position(|p| p == phase) {
            Some(i) => i,
            None => {
                self.phases.push(phase.to_string());
                self.phases.len() - 1
            }
        };
        *self.flows.entry((idx, child.to_string(), direction)).or_default() += bytes;
    }

    /// Edge → fog → cloud, forwarding the same bytes on both hops.
    fn edge_to_cloud(&mut self, phase: &str, edge: &str, bytes: u64) {
        self.add(phase, edge, Direction::Up, bytes);
        self.add(phase, &self.topo.edge_parent[edge].clone(), Direction::Up, bytes);
    }

    fn cloud_to_edge(&mut self, phase: &str, edge: &str, bytes: u64) {
        self.add(phase, &self.topo.edge_parent[edge].clone(), Direction::Down, bytes);
        self.add(phase, edge, Direction::Down, bytes);
    }

    fn parent_of(&self, child: &str) -> &str {
        self.topo
            .edge_parent
            .get(child)
            .map(String::as_str)
            .unwrap_or(self.topo.cloud.as_str())
    }

    fn finish(
        self,
        strategy: DeploymentStrategy,
        events: Vec<EventLatency>,
        model_location: BTreeMap<String, Tier>,
    ) -> CostReport {
        let flows: Vec<Flow> = self
            .flows
            .iter()
            .map(|((p, child, dir), bytes)| Flow {
                phase: self.phases[*p].clone(),
                child: child.clone(),
                parent: self.parent_of(child).to_string(),
                direction: *dir,
                bytes: *bytes,
            })
            .collect();
        let links = self
            .topo
            .links
            .keys()
            .map(|child| {
                let sum = |d| {
                    flows
                        .iter()
                        .filter(|f| &f.child == child && f.direction == d)
                        .map(|f| f.bytes)
                        .sum()
                };
                LinkCost {
                    child: child.clone(),
                    parent: self.parent_of(child).to_string(),
                    bytes_up: sum(Direction::Up),
                    bytes_down: sum(Direction::Down),
                }
            })
            .collect::<Vec<_>>();
        let phases = self
            .phases
            .iter()
            .map(|phase| {
                let sum = |d| {
                    flows
                        .iter()
                        .filter(|f| &f.phase == phase && f.direction == d)
                        .map(|f| f.bytes)
                        .sum()
                };
                PhaseCost {
                    phase: phase.clone(),
                    bytes_up: sum(Direction::Up),
                    bytes_down: sum(Direction::Down),
                }
            })
            .collect();
        let total_bytes = links.iter().map(|l| l.bytes_up + l.bytes_down).sum();
        let max_latency_s = events.iter().map(|e| e.latency_s).fold(0.0, f64::max);
        let mean_latency_s = if events.is_empty() {
            0.0
        } else {
            events.iter().map(|e| e.latency_s).sum::<f64>() / events.len() as f64
        };
        CostReport {
            strategy,
            flows,
            links,
            phases,
            total_bytes,
            events,
            mean_latency_s,
            max_latency_s,
            model_location,
        }
    }
}

/// Inputs of one simulation run.
#[derive(Debug, Clone, Copy)]
pub struct FogScenario<'a> {
    pub dataset: &'a Dataset,
    pub config: &'a RunConfig,
    /// Labels for mined rules; unlabeled when absent.
    pub truth: Option<&'a GroundTruth>,
}

impl FogScenario<'_> {
    fn labels(&self, rules: &[crate::fingerprint::Fingerprint]) -> LabelMap {
        self.truth.map(|t| t.labels_for(rules)).unwrap_or_default()
    }
}

/// Per-edge slice of the data and its locally prepared series.
struct EdgeState {
    edge: String,
    cells: BTreeSet<String>,
    data: Dataset,
    prepared: Prepared,
}

fn present(s: &MetricSeries) -> u64 {
    s.points.iter().filter(|p| p.value.is_some()).count() as u64
}

/// Bytes of raw CDR records and metric rows, in total and in the training
/// part of each series.
fn raw_bytes(d: &Dataset, sizes: &RecordSizes, train_fraction: f64) -> Result<(u64, u64), Error> {
    let mut total = d.cdr.len() as u64 * sizes.cdr_record_bytes;
    let mut train = 0;
    if !d.cdr.is_empty() {
        let w = d.cdr_window_len()?;
        let mut span: BTreeMap<&str, (i64, i64)> = BTreeMap::new();
        for r in &d.cdr {
            let t = r.start_time.div_euclid(w) * w;
            let e = span.entry(&r.cell_id).or_insert((t, t));
            e.0 = e.0.min(t);
            e.1 = e.1.max(t);
        }
        let cut: BTreeMap<&str, i64> = span
            .into_iter()
            .map(|(c, (lo, hi))| {
                let n = ((hi - lo) / w + 1) as usize;
                (c, lo + train_len(n, train_fraction) as i64 * w)
            })
            .collect();
        train +=
            d.cdr.iter().filter(|r| r.start_time < cut[r.cell_id.as_str()]).count() as u64 * sizes.cdr_record_bytes;
    }
    for s in d.kqi.iter().chain(&d.kpi) {
        total += present(s) * sizes.metric_row_bytes;
        let k = train_len(s.len(), train_fraction).min(s.len());
        train += s.points[..k].iter().filter(|p| p.value.is_some()).count() as u64 * sizes.metric_row_bytes;
    }
    Ok((total, train))
}

/// Raw bytes one cell produces in one window.
fn window_bytes(d: &Dataset, cell: &str, window: i64, sizes: &RecordSizes) -> Result<u64, Error> {
    let mut bytes = 0;
    if !d.cdr.is_empty() {
        let w = d.cdr_window_len()?;
        bytes += d
            .cdr
            .iter()
            .filter(|r| r.cell_id == cell && r.start_time.div_euclid(w) * w == window)
            .count() as u64
            * sizes.cdr_record_bytes;
    }
    for s in d.kqi.iter().chain(&d.kpi).filter(|s| s.cell_id == cell) {
        if s.value_at(window).is_some() {
            bytes += sizes.metric_row_bytes;
        }
    }
    Ok(bytes)
}

fn stage_map(pairs: &[(&str, Tier)]) -> BTreeMap<String, Tier> {
    pairs.iter().map(|(s, t)| (s.to_string(), *t)).collect()
}

fn check_bounds(d: &Dataset, bcfg: &BaselineConfig) -> Result<(), Error> {
    let mut names: BTreeSet<&str> = d.kqi.iter().chain(&d.kpi).map(|s| s.metric_name.as_str()).collect();
    if !d.cdr.is_empty() {
        names.extend([ingest::CALL_ATTEMPTS, ingest::DROP_RATE, ingest::MEAN_DURATION]);
    }
    match names.into_iter().find(|n| !bcfg.fixed_bounds.contains_key(*n)) {
        Some(n) => Err(FogError::UnboundedMetric(n.to_string()).into()),
        None => Ok(()),
    }
}

/// Runs the whole pipeline under `strategy`, charging every transfer to
/// the links it crosses.
pub fn simulate(topo: &FogTopology, strategy: DeploymentStrategy, sc: FogScenario<'_>) -> Result<SimOutput, Error> {
    let cfg = sc.config;
    let d = sc.dataset;
    cfg.validate()?;
    if let Some(c) = d.cells().into_iter().find(|c| !topo.cells.contains_key(c)) {
        return Err(FogError::UnassignedCell(c).into());
    }
    let bcfg = baseline_config(cfg, &d.catalog);
    check_bounds(d, &bcfg)?;
    let sizes = cfg.sizes;
    let built_at = d.last_window();

    let mut edges = Vec::new();
    for edge in topo.edges() {
        let cells = topo.cells_of_edge(edge);
        let data = d.restrict(&cells);
        let prepared = pipeline::prepare(&data.all_series()?, cfg)?;
        edges.push(EdgeState {
            edge: edge.clone(),
            cells,
            data,
            prepared,
        });
    }

    let mut acct = Accounts::new(topo);
    let (model, events, transactions, db, model_location) = match strategy {
        DeploymentStrategy::Centralized => {
            for e in &edges {
                acct.edge_to_cloud(
                    "collect_raw",
                    &e.edge,
                    raw_bytes(&e.data, &sizes, cfg.train_fraction)?.0,
                );
            }
            let prepared = pipeline::prepare(&d.all_series()?, cfg)?;
            let model = pipeline::fit(&prepared, &bcfg)?;
            let events = pipeline::detect(&model, &prepared.test, cfg)?;
            let tx = build_transactions(&events, &d.kpi, &model, cfg.z_symptom);
            let rules = mine_rare_rules(&tx, &cfg.mine);
            let db = FingerprintDb::empty().update(&rules, tx.len() as u64, &sc.labels(&rules), built_at);
            for ev in &events {
                acct.cloud_to_edge("alerts", &topo.cells[&ev.cell_id], sizes.alert_bytes);
            }
            let loc = stage_map(&[
                ("aggregate", Tier::Cloud),
                ("clean", Tier::Cloud),
                ("train", Tier::Cloud),
                ("detect", Tier::Cloud),
                ("transactions", Tier::Cloud),
                ("mine", Tier::Cloud),
                ("diagnose", Tier::Cloud),
            ]);
            (model, events, tx, db, loc)
        }
        DeploymentStrategy::EdgeInference => {
            for e in &edges {
                acct.edge_to_cloud(
                    "collect_train",
                    &e.edge,
                    raw_bytes(&e.data, &sizes, cfg.train_fraction)?.1,
                );
            }
            let prepared = pipeline::prepare(&d.all_series()?, cfg)?;
            let model = pipeline::fit(&prepared, &bcfg)?;
            let (events, tx) = edge_inference(&mut acct, &edges, &model, cfg, true)?;
            for e in &edges {
                let n = tx.iter().filter(|t| e.cells.contains(&t.key.cell_id)).count() as u64;
                acct.edge_to_cloud("transactions_up", &e.edge, n * sizes.transaction_bytes);
            }
            let rules = mine_rare_rules(&tx, &cfg.mine);
            let db = FingerprintDb::empty().update(&rules, tx.len() as u64, &sc.labels(&rules), built_at);
            let db_bytes = db.to_json().len() as u64;
            for e in &edges {
                acct.cloud_to_edge("db_down", &e.edge, db_bytes);
            }
            let loc = stage_map(&[
                ("aggregate", Tier::Cloud),
                ("clean", Tier::Cloud),
                ("train", Tier::Cloud),
                ("detect", Tier::Edge),
                ("transactions", Tier::Edge),
                ("mine", Tier::Cloud),
                ("diagnose", Tier::Edge),
            ]);
            (model, events, tx, db, loc)
        }
        DeploymentStrategy::Fog => {
            // edges aggregate and clean locally, fogs fit their partitions
            let mut partials = vec![BaselineModel::empty(bcfg.clone())];
            for (fog, fog_edges) in &topo.fogs {
                let mut part = Prepared::default();
                for e in edges.iter().filter(|e| fog_edges.contains(&e.edge)) {
                    let rows: u64 = e.prepared.train.iter().map(present).sum();
                    acct.add("train_series_up", &e.edge, Direction::Up, rows * sizes.metric_row_bytes);
                    part.train.extend(e.prepared.train.iter().cloned());
                }
                if !part.train.is_empty() {
                    let m = pipeline::fit(&part, &bcfg)?;
                    acct.add("sketches_up", fog, Direction::Up, m.to_json().len() as u64);
                    partials.push(m);
                }
            }
            if partials.len() == 1 {
                let all = Prepared {
                    skipped: edges.iter().flat_map(|e| e.prepared.skipped.clone()).collect(),
                    ..Prepared::default()
                };
                pipeline::fit(&all, &bcfg)?;
            }
            let model = merge_baselines(&partials)?;
            for fog in topo.fogs.keys() {
                let sub = model.restrict_to_cells(&topo.cells_of_fog(fog));
                acct.add("model_down", fog, Direction::Down, sub.to_json().len() as u64);
            }
            let (events, tx) = edge_inference(&mut acct, &edges, &model, cfg, false)?;

            let mut counts = ItemsetCounts::empty(cfg.mine.max_antecedent);
            for (fog, fog_edges) in &topo.fogs {
                let local: Vec<Transaction> = tx
                    .iter()
                    .filter(|t| fog_edges.contains(&topo.cells[&t.key.cell_id]))
                    .cloned()
                    .collect();
                for e in fog_edges {
                    let n = local.iter().filter(|t| &topo.cells[&t.key.cell_id] == e).count() as u64;
                    acct.add("transactions_up", e, Direction::Up, n * sizes.transaction_bytes);
                }
                if !local.is_empty() {
                    let c = ItemsetCounts::from_transactions(&local, cfg.mine.max_antecedent);
                    acct.add("counts_up", fog, Direction::Up, c.to_json().len() as u64);
                    counts.merge(&c)?;
                }
            }
            let rules = counts.mine(&cfg.mine)?;
            let db = FingerprintDb::empty().update(&rules, counts.transaction_total, &sc.labels(&rules), built_at);
            let db_bytes = db.to_json().len() as u64;
            for fog in topo.fogs.keys() {
                acct.add("db_down", fog, Direction::Down, db_bytes);
            }
            for ev in &events {
                acct.add("alerts", &topo.cells[&ev.cell_id], Direction::Down, sizes.alert_bytes);
            }
            let loc = stage_map(&[
                ("aggregate", Tier::Edge),
                ("clean", Tier::Edge),
                ("train", Tier::Fog),
                ("merge", Tier::Cloud),
                ("detect", Tier::Edge),
                ("transactions", Tier::Edge),
                ("count", Tier::Fog),
                ("mine", Tier::Cloud),
                ("diagnose", Tier::Fog),
            ]);
            (model, events, tx, db, loc)
        }
    };

    let mut latencies = Vec::with_capacity(events.len());
    for ev in &events {
        let edge = &topo.cells[&ev.cell_id];
        let fog = &topo.edge_parent[edge];
        let (el, fl) = (topo.links[edge], topo.links[fog]);
        let latency_s = match strategy {
            DeploymentStrategy::Centralized => {
                let up = window_bytes(d, &ev.cell_id, ev.peak_window, &sizes)?;
                el.transfer_time(up)
                    + fl.transfer_time(up)
                    + fl.transfer_time(sizes.alert_bytes)
                    + el.transfer_time(sizes.alert_bytes)
            }
            DeploymentStrategy::EdgeInference => 0.0,
            DeploymentStrategy::Fog => el.transfer_time(sizes.transaction_bytes) + el.transfer_time(sizes.alert_bytes),
        };
        latencies.push(EventLatency {
            cell_id: ev.cell_id.clone(),
            metric_name: ev.metric_name.clone(),
            start_window: ev.start_window,
            latency_s,
        });
    }
    debug_assert_eq!(transactions.len(), events.len());

    Ok(SimOutput {
        report: acct.finish(strategy, latencies, model_location),
        model,
        db,
        events,
    })
}

/// Ships each edge its slice of `model` (from the cloud, or from its fog
/// when `from_cloud` is false), then detects and builds
/// transactions locally. Results come back in pooled order.
fn edge_inference(
    acct: &mut Accounts<'_>,
    edges: &[EdgeState],
    model: &BaselineModel,
    cfg: &RunConfig,
    from_cloud: bool,
) -> Result<(Vec<AnomalyEvent>, Vec<Transaction>), Error> {
    let mut pairs = Vec::new();
    for e in edges {
        let sub = model.restrict_to_cells(&e.cells);
        let bytes = sub.to_json().len() as u64;
        if from_cloud {
            acct.cloud_to_edge("model_down", &e.edge, bytes);
        } else {
            acct.add("model_down", &e.edge, Direction::Down, bytes);
        }
        let events = pipeline::detect(&sub, &e.prepared.test, cfg)?;
        let tx = build_transactions(&events, &e.data.kpi, &sub, cfg.z_symptom);
        pairs.extend(events.into_iter().zip(tx));
    }
    pairs.sort_by(|(a, _), (b, _)| {
        (&a.cell_id, &a.metric_name, a.start_window).cmp(&(&b.cell_id, &b.metric_name, b.start_window))
    });
    Ok(pairs.into_iter().unzip())
}

/// Side-by-side summary of several reports.
pub fn format_comparison(reports: &[CostReport]) -> String {
    let mut out = format!(
        "{:<16} {:>14} {:>14} {:>14} {:>8}\n",
        "strategy", "total_bytes", "mean_latency_s", "max_latency_s", "events"
    );
    for r in reports {
        out.push_str(&format!(
            "{:<16} {:>14} {:>14.6} {:>14.6} {:>8}\n",
            r.strategy.to_string(),
            r.total_bytes,
            r.mean_latency_s,
            r.max_latency_s,
            r.events.len()
        ));
    }
    for r in reports {
        out.push_str(&format!("\n{}\n", r.strategy));
        for p in &r.phases {
            out.push_str(&format!(
                "  {:<18} up {:>12}  down {:>12}\n",
                p.phase, p.bytes_up, p.bytes_down
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::CdrRecord;
    use crate::synth::{generate, ScenarioSpec};

    fn scenario(n_cells: usize, seed: u64) -> (Dataset, GroundTruth) {
        let mut spec = ScenarioSpec {
            n_cells,
            days: 3,
            window_len: 300,
            ..Default::default()
        };
        spec.anomalies = spec.spread_anomalies(n_cells.min(4), &["web_delay", "dl_throughput"], 4, 9.0);
        let g = generate(&spec, seed).unwrap();
        let t = g.truth.clone();
        (g.into(), t)
    }

    fn cfg() -> RunConfig {
        let mut c = RunConfig::default();
        c.mine.s_min_count = 1;
        c.mine.s_max_fraction = 0.5;
        c
    }

    #[test]
    fn strategies_agree_on_model_and_db() {
        let (d, truth) = scenario(6, 3);
        let cfg = cfg();
        let topo = FogTopology::balanced(&d.cells(), 2, 2, DEFAULT_EDGE_LINK, DEFAULT_FOG_LINK).unwrap();
        let sc = FogScenario {
            dataset: &d,
            config: &cfg,
            truth: Some(&truth),
        };
        let c = simulate(&topo, DeploymentStrategy::Centralized, sc).unwrap();
        let e = simulate(&topo, DeploymentStrategy::EdgeInference, sc).unwrap();
        let f = simulate(&topo, DeploymentStrategy::Fog, sc).unwrap();
        assert!(compare_models(&c.model, &f.model));
        assert!(compare_models(&c.model, &e.model));
        assert!(compare_dbs(&c.db, &f.db));
        assert!(compare_dbs(&c.db, &e.db));
        assert_eq!(c.events, f.events);
        assert!(!c.db.rules.is_empty());
        assert!(f.report.total_bytes < c.report.total_bytes);
        assert!(c.report.mean_latency_s >= f.report.mean_latency_s);
        assert!(f.report.mean_latency_s >= e.report.mean_latency_s);
    }

    #[test]
    fn models_differing_in_one_bin_compare_unequal() {
        let (d, _) = scenario(2, 1);
        let (m, _) = pipeline::train(&d, &cfg()).unwrap();
        assert!(compare_models(&m, &m));
        let mut other = m.clone();
        other.sketches.values_mut().next().unwrap().counts[0] += 1;
        assert!(!compare_models(&m, &other));
    }

    #[test]
    fn hundred_cdr_records_on_one_path() {
        let cells: BTreeSet<String> = ["c".to_string()].into();
        let topo = FogTopology::balanced(&cells, 1, 1, DEFAULT_EDGE_LINK, DEFAULT_FOG_LINK).unwrap();
        let mut catalog = ingest::MetricCatalog::default();
        for (n, mut e) in ingest::cdr_catalog_entries(60) {
            e.range = Some([0.0, 1000.0]);
            catalog.insert(n, e);
        }
        let cdr = (0..100)
            .map(|i| CdrRecord {
                cell_id: "c".into(),
                start_time: i * 60,
                duration: 30,
                dropped: false,
                source_hash: "a".into(),
                dest_hash: "b".into(),
            })
            .collect();
        let d = Dataset {
            catalog,
            cdr,
            kqi: vec![],
            kpi: vec![],
        };
        let cfg = RunConfig::default();
        let out = simulate(
            &topo,
            DeploymentStrategy::Centralized,
            FogScenario {
                dataset: &d,
                config: &cfg,
                truth: None,
            },
        )
        .unwrap();
        let collect: Vec<_> = out.report.flows.iter().filter(|f| f.phase == "collect_raw").collect();
        assert_eq!(collect.len(), 2);
        assert!(collect.iter().all(|f| f.bytes == 6400 && f.direction == Direction::Up));
    }

    #[test]
    fn zero_records_cost_nothing() {
        let cells: BTreeSet<String> = ["c".to_string()].into();
        let topo = FogTopology::balanced(&cells, 1, 1, DEFAULT_EDGE_LINK, DEFAULT_FOG_LINK).unwrap();
        let d = Dataset {
            catalog: Default::default(),
            cdr: vec![],
            kqi: vec![],
            kpi: vec![],
        };
        let cfg = RunConfig::default();
        let sc = FogScenario {
            dataset: &d,
            config: &cfg,
            truth: None,
        };
        // nothing to train on is a domain error, but no bytes move first
        assert!(matches!(
            simulate(&topo, DeploymentStrategy::Centralized, sc),
            Err(Error::Detect(crate::baseline::DetectError::EmptyTraining))
        ));
        let mut acct = Accounts::new(&topo);
        acct.edge_to_cloud("collect_raw", "fog00-edge00", raw_bytes(&d, &cfg.sizes, 0.7).unwrap().0);
        let r = acct.finish(DeploymentStrategy::Centralized, vec![], BTreeMap::new());
        assert_eq!(r.total_bytes, 0);
        assert!(r.links.iter().all(|l| l.bytes_up == 0 && l.bytes_down == 0));
    }

    #[test]
    fn unassigned_cell_and_unbounded_metric() {
        let (d, _) = scenario(3, 2);
        let few: BTreeSet<String> = d.cells().into_iter().take(2).collect();
        let topo = FogTopology::balanced(&few, 1, 1, DEFAULT_EDGE_LINK, DEFAULT_FOG_LINK).unwrap();
        let cfg = cfg();
        let sc = FogScenario {
            dataset: &d,
            config: &cfg,
            truth: None,
        };
        assert!(matches!(
            simulate(&topo, DeploymentStrategy::Fog, sc),
            Err(Error::Fog(FogError::UnassignedCell(c))) if c == "cell002"
        ));
        let mut d2 = d.clone();
        d2.catalog.metrics.get_mut("rtt").unwrap().range = None;
        let topo = FogTopology::default_for(&d2.cells());
        let sc = FogScenario {
            dataset: &d2,
            config: &cfg,
            truth: None,
        };
        assert!(matches!(
            simulate(&topo, DeploymentStrategy::Fog, sc),
            Err(Error::Fog(FogError::UnboundedMetric(m))) if m == "rtt"
        ));
    }

    #[test]
    fn totals_are_sums_and_relays_conserve() {
        let (d, _) = scenario(4, 5);
        let cfg = cfg();
        let topo = FogTopology::balanced(&d.cells(), 2, 2, DEFAULT_EDGE_LINK, DEFAULT_FOG_LINK).unwrap();
        for s in DeploymentStrategy::ALL {
            let r = simulate(
                &topo,
                s,
                FogScenario {
                    dataset: &d,
                    config: &cfg,
                    truth: None,
                },
            )
            .unwrap()
            .report;
            let flows: u64 = r.flows.iter().map(|f| f.bytes).sum();
            let links: u64 = r.links.iter().map(|l| l.bytes_up + l.bytes_down).sum();
            let phases: u64 = r.phases.iter().map(|p| p.bytes_up + p.bytes_down).sum();
            assert_eq!((flows, links), (r.total_bytes, r.total_bytes));
            assert_eq!(phases, r.total_bytes);
            assert!(r.events.iter().all(|e| e.latency_s >= 0.0));
            // relayed phases: each fog forwards exactly what its edges send
            for phase in ["collect_raw", "collect_train", "transactions_up"] {
                if s == DeploymentStrategy::Fog {
                    continue;
                }
                for (fog, fog_edges) in &topo.fogs {
                    let by = |child: &str| {
                        r.flows
                            .iter()
                            .filter(|f| f.phase == phase && f.child == child && f.direction == Direction::Up)
                            .map(|f| f.bytes)
                            .sum::<u64>()
                    };
                    let inflow: u64 = fog_edges.iter().map(|e| by(e)).sum();
                    assert_eq!(inflow, by(fog), "{s} {phase} {fog}");
                }
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let (d, _) = scenario(3, 9);
        let cfg = cfg();
        let topo = FogTopology::default_for(&d.cells());
        let sc = FogScenario {
            dataset: &d,
            config: &cfg,
            truth: None,
        };
        let a = simulate(&topo, DeploymentStrategy::Fog, sc).unwrap().report.to_json();
        let b = simulate(&topo, DeploymentStrategy::Fog, sc).unwrap().report.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn strategy_names() {
        for s in DeploymentStrategy::ALL {
            assert_eq!(s.to_string().parse::<DeploymentStrategy>().unwrap(), s);
        }
        assert_eq!(
            "edge-inference".parse::<DeploymentStrategy>().unwrap(),
            DeploymentStrategy::EdgeInference
        );
        assert!("mesh".parse::<DeploymentStrategy>().is_err());
        let txt = format_comparison(&[]);
        assert!(txt.starts_with("strategy"));
    }
}
