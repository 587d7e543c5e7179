//! Fingerprint learning: KPI symptom transactions around KQI anomalies,
//! rare association rule mining, and the persisted fingerprint database.
//!
//! Mining keeps rules whose joint support count lies in a band
//! `[s_min_count, ceil(s_max_fraction * |transactions|)]`. The floor keeps
//! the FP-tree small; the ceiling drops patterns so common they carry no
//! diagnostic signal. One FP-tree is grown per consequent KQI, while
//! confidence denominators come from antecedent counts over all
//! transactions.

mod counts;
mod fpgrowth;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::baseline::{hour_bucket, robust_score, BaselineModel, Direction, SeriesKey};
use crate::ingest::{CellWindowKey, MetricSeries};
use crate::postfilter::AnomalyEvent;

pub use counts::ItemsetCounts;

pub const DB_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum MineError {
    #[error("fingerprint db schema version {found}, expected {expected}")]
    SchemaMismatch { found: u32, expected: u32 },
    #[error("corrupt fingerprint db: {0}")]
    CorruptDb(String),
    #[error("invalid mining config: {0}")]
    InvalidConfig(String),
    #[error("count tables built with max itemset size {0} cannot serve max_antecedent {1}")]
    CountDepth(usize, usize),
    #[error("bad symptom item `{0}`")]
    BadItem(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymptomState {
    High,
    Low,
}

impl SymptomState {
    fn as_str(self) -> &'static str {
        match self {
            SymptomState::High => "HIGH",
            SymptomState::Low => "LOW",
        }
    }
}

/// A KPI deviating in one direction. Serialized as `metric=STATE`, and
/// ordered by that string so sorted arrays are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymptomItem {
    pub metric_name: String,
    pub state: SymptomState,
}

impl SymptomItem {
    pub fn new(metric_name: impl Into<String>, state: SymptomState) -> Self {
        SymptomItem {
            metric_name: metric_name.into(),
            state,
        }
    }

    pub fn high(metric_name: impl Into<String>) -> Self {
        Self::new(metric_name, SymptomState::High)
    }

    pub fn low(metric_name: impl Into<String>) -> Self {
        Self::new(metric_name, SymptomState::Low)
    }
}

impl fmt::Display for SymptomItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.metric_name, self.state.as_str())
    }
}

impl Ord for SymptomItem {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self
            .metric_name
            .bytes()
            .chain(b"=".iter().copied())
            .chain(self.state.as_str().bytes());
        let b = other
            .metric_name
            .bytes()
            .chain(b"=".iter().copied())
            .chain(other.state.as_str().bytes());
        a.cmp(b)
    }
}

impl PartialOrd for SymptomItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for SymptomItem {
    type Err = MineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (metric, state) = s.rsplit_once('=').ok_or_else(|| MineError::BadItem(s.into()))?;
        let state = match state {
            "HIGH" => SymptomState::High,
            "LOW" => SymptomState::Low,
            _ => return Err(MineError::BadItem(s.into())),
        };
        if metric.is_empty() {
            return Err(MineError::BadItem(s.into()));
        }
        Ok(SymptomItem::new(metric, state))
    }
}

impl Serialize for SymptomItem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SymptomItem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type Itemset = Vec<SymptomItem>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transaction {
    pub items: BTreeSet<SymptomItem>,
    /// The degraded KQI.
    pub consequent: String,
    pub key: CellWindowKey,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub antecedent: Itemset,
    pub consequent: String,
    pub support: f64,
    /// Transactions holding the antecedent and the consequent.
    pub support_count: u64,
    /// Transactions holding the antecedent, whatever their consequent.
    pub antecedent_count: u64,
    pub confidence: f64,
    pub lift: f64,
    #[serde(default)]
    pub cause_label: Option<String>,
}

impl Fingerprint {
    pub fn key(&self) -> (Itemset, String) {
        (self.antecedent.clone(), self.consequent.clone())
    }
}

/// Confidence desc, support count desc, antecedent asc, consequent asc.
pub fn rule_order(a: &Fingerprint, b: &Fingerprint) -> Ordering {
    b.confidence
        .total_cmp(&a.confidence)
        .then(b.support_count.cmp(&a.support_count))
        .then_with(|| a.antecedent.cmp(&b.antecedent))
        .then_with(|| a.consequent.cmp(&b.consequent))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MineConfig {
    pub s_min_count: u64,
    /// Rarity ceiling as a fraction of all transactions.
    pub s_max_fraction: f64,
    pub c_min: f64,
    pub lift_min: f64,
    pub max_antecedent: usize,
}

impl Default for MineConfig {
    fn default() -> Self {
        MineConfig {
            s_min_count: 3,
            s_max_fraction: 0.10,
            c_min: 0.8,
            lift_min: 1.5,
            max_antecedent: 4,
        }
    }
}

impl MineConfig {
    pub fn validate(&self) -> Result<(), MineError> {
        if self.s_min_count < 1 {
            return Err(MineError::InvalidConfig("s_min_count must be >= 1".into()));
        }
        if !(self.s_max_fraction > 0.0 && self.s_max_fraction <= 1.0) {
            return Err(MineError::InvalidConfig("s_max_fraction must be in (0, 1]".into()));
        }
        if !(self.c_min > 0.0 && self.c_min <= 1.0) {
            return Err(MineError::InvalidConfig("c_min must be in (0, 1]".into()));
        }
        if !(self.lift_min >= 0.0 && self.lift_min.is_finite()) {
            return Err(MineError::InvalidConfig("lift_min must be finite and >= 0".into()));
        }
        if self.max_antecedent < 1 {
            return Err(MineError::InvalidConfig("max_antecedent must be >= 1".into()));
        }
        Ok(())
    }

    /// Largest joint support count a rule may have.
    pub fn ceiling(&self, transaction_total: u64) -> u64 {
        let x = self.s_max_fraction * transaction_total as f64;
        let r = x.round();
        if (x - r).abs() < 1e-9 {
            r as u64
        } else {
            x.ceil() as u64
        }
    }
}

/// Builds a rule from integer counts if it passes the band and thresholds.
/// Both mining routes go through here so their floats agree bit for bit.
pub(crate) fn rule_from_counts(
    antecedent: Itemset,
    consequent: &str,
    joint: u64,
    antecedent_count: u64,
    consequent_count: u64,
    total: u64,
    cfg: &MineConfig,
) -> Option<Fingerprint> {
    if antecedent.is_empty()
        || antecedent.len() > cfg.max_antecedent
        || joint < cfg.s_min_count
        || joint > cfg.ceiling(total)
    {
        return None;
    }
    let confidence = joint as f64 / antecedent_count as f64;
    let lift = confidence / (consequent_count as f64 / total as f64);
    (confidence >= cfg.c_min && lift >= cfg.lift_min).then(|| Fingerprint {
        antecedent,
        consequent: consequent.to_string(),
        support: joint as f64 / total as f64,
        support_count: joint,
        antecedent_count,
        confidence,
        lift,
        cause_label: None,
    })
}

/// Items ranked by descending frequency over all transactions, ties by item order.
pub(crate) fn item_ranking(transactions: &[Transaction]) -> Vec<SymptomItem> {
    let mut freq: BTreeMap<&SymptomItem, u64> = BTreeMap::new();
    for t in transactions {
        for i in &t.items {
            *freq.entry(i).or_default() += 1;
        }
    }
    let mut items: Vec<(&SymptomItem, u64)> = freq.into_iter().collect();
    items.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    items.into_iter().map(|(i, _)| i.clone()).collect()
}

pub(crate) fn encode(items: &BTreeSet<SymptomItem>, rank: &HashMap<&SymptomItem, u32>) -> Vec<u32> {
    let mut v: Vec<u32> = items.iter().map(|i| rank[i]).collect();
    v.sort_unstable();
    v
}

pub(crate) fn decode(ids: &[u32], ranking: &[SymptomItem]) -> Itemset {
    let mut v: Itemset = ids.iter().map(|&i| ranking[i as usize].clone()).collect();
    v.sort();
    v
}

/// Mines rare rules `KPI symptoms -> KQI` with per-consequent FP-trees.
pub fn mine_rare_rules(transactions: &[Transaction], cfg: &MineConfig) -> Vec<Fingerprint> {
    let total = transactions.len() as u64;
    if total == 0 {
        return Vec::new();
    }
    let ranking = item_ranking(transactions);
    let rank: HashMap<&SymptomItem, u32> = ranking.iter().enumerate().map(|(i, it)| (it, i as u32)).collect();
    let encoded: Vec<Vec<u32>> = transactions.iter().map(|t| encode(&t.items, &rank)).collect();

    // Every candidate antecedent reaches the floor globally, so this table
    // covers all confidence denominators.
    let antecedent_counts: HashMap<Vec<u32>, u64> =
        fpgrowth::frequent_itemsets(&encoded, ranking.len(), cfg.s_min_count, cfg.max_antecedent)
            .into_iter()
            .collect();

    let mut by_consequent: BTreeMap<&str, Vec<Vec<u32>>> = BTreeMap::new();
    for (t, e) in transactions.iter().zip(&encoded) {
        by_consequent.entry(&t.consequent).or_default().push(e.clone());
    }

    let mut rules = Vec::new();
    for (consequent, txs) in by_consequent {
        let consequent_count = txs.len() as u64;
        for (ids, joint) in fpgrowth::frequent_itemsets(&txs, ranking.len(), cfg.s_min_count, cfg.max_antecedent) {
            let ac = antecedent_counts[&ids];
            if let Some(r) = rule_from_counts(
                decode(&ids, &ranking),
                consequent,
                joint,
                ac,
                consequent_count,
                total,
                cfg,
            ) {
                rules.push(r);
            }
        }
    }
    rules.sort_by(rule_order);
    rules
}

/// Turns each event into a transaction of the KPI symptoms present in its
/// cell at the event's peak window.
pub fn build_transactions(
    events: &[AnomalyEvent],
    kpi_series: &[MetricSeries],
    model: &BaselineModel,
    z_symptom: f64,
) -> Vec<Transaction> {
    let mut by_cell: BTreeMap<&str, Vec<&MetricSeries>> = BTreeMap::new();
    for s in kpi_series {
        by_cell.entry(&s.cell_id).or_default().push(s);
    }
    events
        .iter()
        .map(|ev| {
            let mut items = BTreeSet::new();
            let mut seen_any = false;
            for s in by_cell.get(ev.cell_id.as_str()).into_iter().flatten() {
                let Some(v) = s.value_at(ev.peak_window) else {
                    continue;
                };
                seen_any = true;
                let key = SeriesKey::new(&ev.cell_id, &s.metric_name, hour_bucket(ev.peak_window));
                match robust_score(model, &key, v) {
                    Ok(sc) if sc.score >= z_symptom => match sc.direction {
                        Direction::Up => {
                            items.insert(SymptomItem::high(&s.metric_name));
                        }
                        Direction::Down => {
                            items.insert(SymptomItem::low(&s.metric_name));
                        }
                        Direction::None => {}
                    },
                    Ok(_) => {}
                    Err(e) => log::debug!("skipping KPI symptom: {e}"),
                }
            }
            if !seen_any {
                log::warn!("missing KPI data for cell {} at window {}", ev.cell_id, ev.peak_window);
            }
            Transaction {
                items,
                consequent: ev.metric_name.clone(),
                key: CellWindowKey {
                    cell_id: ev.cell_id.clone(),
                    window_start: ev.peak_window,
                },
            }
        })
        .collect()
}

pub type LabelMap = BTreeMap<(Itemset, String), String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub antecedent: Itemset,
    pub consequent: String,
    pub cause_label: String,
}

pub fn labels_from_entries(entries: Vec<LabelEntry>) -> LabelMap {
    entries
        .into_iter()
        .map(|mut e| {
            e.antecedent.sort();
            e.antecedent.dedup();
            ((e.antecedent, e.consequent), e.cause_label)
        })
        .collect()
}

pub fn labels_to_entries(labels: &LabelMap) -> Vec<LabelEntry> {
    labels
        .iter()
        .map(|((a, c), l)| LabelEntry {
            antecedent: a.clone(),
            consequent: c.clone(),
            cause_label: l.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FingerprintDb {
    pub schema_version: u32,
    /// Epoch seconds of the data the db was last built from.
    pub built_at: i64,
    pub transaction_total: u64,
    pub rules: Vec<Fingerprint>,
}

impl FingerprintDb {
    pub fn empty() -> Self {
        FingerprintDb {
            schema_version: DB_SCHEMA_VERSION,
            built_at: 0,
            transaction_total: 0,
            rules: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("db serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, MineError> {
        let db: FingerprintDb = serde_json::from_str(text)?;
        if db.schema_version != DB_SCHEMA_VERSION {
            return Err(MineError::SchemaMismatch {
                found: db.schema_version,
                expected: DB_SCHEMA_VERSION,
            });
        }
        db.validate()?;
        Ok(db)
    }

    pub fn validate(&self) -> Result<(), MineError> {
        let mut keys = BTreeSet::new();
        for r in &self.rules {
            let bad = |what: &str| {
                MineError::CorruptDb(format!(
                    "rule {:?} -> {}: {what}",
                    r.antecedent.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
                    r.consequent
                ))
            };
            if r.antecedent.is_empty() {
                return Err(bad("empty antecedent"));
            }
            if r.antecedent.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("antecedent not a sorted set"));
            }
            if !(r.support > 0.0 && r.support <= 1.0) {
                return Err(bad("support outside (0, 1]"));
            }
            if !(r.confidence > 0.0 && r.confidence <= 1.0) {
                return Err(bad("confidence outside (0, 1]"));
            }
            if !(r.lift > 0.0 && r.lift.is_finite()) {
                return Err(bad("lift must be positive"));
            }
            if r.support_count == 0 || r.support_count > r.antecedent_count || r.support_count > self.transaction_total
            {
                return Err(bad("inconsistent counts"));
            }
            let expected = r.support_count as f64 / r.antecedent_count as f64;
            if (r.confidence - expected).abs() > 1e-12 {
                return Err(bad("confidence does not match counts"));
            }
            if !keys.insert(r.key()) {
                return Err(bad("duplicate rule"));
            }
        }
        Ok(())
    }

    /// New rules replace same-key rules. A label from `labels` wins; else a
    /// rule keeps the label it had before.
    pub fn update(
        &self,
        new_rules: &[Fingerprint],
        transaction_total: u64,
        labels: &LabelMap,
        built_at: i64,
    ) -> FingerprintDb {
        let mut merged: BTreeMap<(Itemset, String), Fingerprint> =
            self.rules.iter().map(|r| (r.key(), r.clone())).collect();
        for r in new_rules {
            let key = r.key();
            let mut r = r.clone();
            if r.cause_label.is_none() {
                r.cause_label = merged.get(&key).and_then(|old| old.cause_label.clone());
            }
            merged.insert(key, r);
        }
        for (key, r) in merged.iter_mut() {
            if let Some(l) = labels.get(key) {
                r.cause_label = Some(l.clone());
            }
        }
        let mut rules: Vec<Fingerprint> = merged.into_values().collect();
        rules.sort_by(rule_order);
        FingerprintDb {
            schema_version: DB_SCHEMA_VERSION,
            built_at,
            transaction_total: self.transaction_total.max(transaction_total),
            rules,
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), MineError> {
        std::fs::write(path, self.to_json()).map_err(|source| MineError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, MineError> {
        let text = std::fs::read_to_string(path).map_err(|source| MineError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}

pub fn update_db(
    db: &FingerprintDb,
    new_rules: &[Fingerprint],
    transaction_total: u64,
    labels: &LabelMap,
    built_at: i64,
) -> FingerprintDb {
    db.update(new_rules, transaction_total, labels, built_at)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tx(items: &[&str], q: &str) -> Transaction {
        Transaction {
            items: items.iter().map(|s| SymptomItem::high(*s)).collect(),
            consequent: q.into(),
            key: CellWindowKey {
                cell_id: "c".into(),
                window_start: 0,
            },
        }
    }

    fn loose() -> MineConfig {
        MineConfig {
            s_min_count: 2,
            s_max_fraction: 1.0,
            c_min: 0.5,
            lift_min: 0.0,
            max_antecedent: 4,
        }
    }

    #[test]
    fn item_string_form() {
        let i: SymptomItem = "rtt=HIGH".parse().unwrap();
        assert_eq!(i, SymptomItem::high("rtt"));
        assert_eq!(i.to_string(), "rtt=HIGH");
        assert!("rtt=UP".parse::<SymptomItem>().is_err());
        assert!("a1=HIGH".parse::<SymptomItem>().unwrap() < "a=HIGH".parse().unwrap());
        assert!(SymptomItem::high("x") < SymptomItem::low("x"));
    }

    #[test]
    fn three_transaction_example() {
        let t = vec![tx(&["a", "b"], "Q"), tx(&["a", "b"], "Q"), tx(&["a"], "Q")];
        let rules = mine_rare_rules(&t, &loose());
        let got: BTreeMap<Vec<String>, u64> = rules
            .iter()
            .map(|r| {
                (
                    r.antecedent.iter().map(|i| i.metric_name.clone()).collect(),
                    r.support_count,
                )
            })
            .collect();
        let want: BTreeMap<Vec<String>, u64> = [
            (vec!["a".to_string()], 3),
            (vec!["b".to_string()], 2),
            (vec!["a".to_string(), "b".to_string()], 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        let ab = rules.iter().find(|r| r.antecedent.len() == 2).unwrap();
        assert_eq!(ab.confidence, 1.0);
        assert_eq!(ab.lift, 1.0);
    }

    #[test]
    fn confidence_uses_global_antecedent_count() {
        let t = vec![
            tx(&["a", "b"], "Q"),
            tx(&["a", "b"], "Q"),
            tx(&["a", "b"], "R"),
            tx(&[], "R"),
        ];
        let rules = mine_rare_rules(&t, &loose());
        let r = rules
            .iter()
            .find(|r| r.antecedent.len() == 2 && r.consequent == "Q")
            .unwrap();
        assert_eq!((r.support_count, r.antecedent_count), (2, 3));
        assert!((r.confidence - 2.0 / 3.0).abs() < 1e-15);
        // lift = (2/3) / (2/4)
        assert!((r.lift - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rarity_ceiling_drops_common_itemsets() {
        // ceiling = ceil(0.5 * 4) = 2; {a} appears with Q three times
        let t = vec![
            tx(&["a", "b"], "Q"),
            tx(&["a", "b"], "Q"),
            tx(&["a"], "Q"),
            tx(&["c"], "R"),
        ];
        let cfg = MineConfig {
            s_max_fraction: 0.5,
            ..loose()
        };
        let rules = mine_rare_rules(&t, &cfg);
        assert!(rules.iter().all(|r| r.support_count <= 2));
        assert!(!rules.iter().any(|r| r.antecedent == vec![SymptomItem::high("a")]));
        assert!(rules
            .iter()
            .any(|r| r.antecedent == vec![SymptomItem::high("a"), SymptomItem::high("b")]));
    }

    #[test]
    fn empty_inputs() {
        assert!(mine_rare_rules(&[], &MineConfig::default()).is_empty());
        assert!(mine_rare_rules(&[tx(&[], "Q")], &loose()).is_empty());
    }

    #[test]
    fn output_is_sorted() {
        let t = vec![
            tx(&["a", "b"], "Q"),
            tx(&["a", "b"], "Q"),
            tx(&["a", "c"], "Q"),
            tx(&["c"], "R"),
            tx(&["c"], "R"),
        ];
        let rules = mine_rare_rules(&t, &loose());
        assert!(rules.windows(2).all(|w| rule_order(&w[0], &w[1]) == Ordering::Less));
    }

    fn rule(items: &[&str], q: &str, conf_num: u64, conf_den: u64) -> Fingerprint {
        Fingerprint {
            antecedent: items.iter().map(|s| SymptomItem::high(*s)).collect(),
            consequent: q.into(),
            support: conf_num as f64 / 10.0,
            support_count: conf_num,
            antecedent_count: conf_den,
            confidence: conf_num as f64 / conf_den as f64,
            lift: 2.0,
            cause_label: None,
        }
    }

    #[test]
    fn update_rules() {
        let r = vec![rule(&["a"], "Q", 2, 2)];
        let db = FingerprintDb::empty().update(&r, 10, &LabelMap::new(), 5);
        assert_eq!(db.rules, r);
        assert_eq!((db.built_at, db.transaction_total), (5, 10));

        let labels: LabelMap = [((r[0].antecedent.clone(), "Q".to_string()), "congestion".to_string())].into();
        let db = db.update(&[], 10, &labels, 6);
        assert_eq!(db.rules[0].cause_label.as_deref(), Some("congestion"));

        let newer = vec![rule(&["a"], "Q", 3, 4)];
        let db = db.update(&newer, 12, &LabelMap::new(), 7);
        assert_eq!(db.rules.len(), 1);
        assert_eq!(db.rules[0].support_count, 3);
        assert_eq!(db.rules[0].cause_label.as_deref(), Some("congestion"));
    }

    #[test]
    fn db_round_trip_and_validation() {
        let db = FingerprintDb::empty().update(&[rule(&["a", "b"], "Q", 2, 3)], 10, &LabelMap::new(), 1);
        let text = db.to_json();
        assert!(text.contains("\"a=HIGH\""));
        let back = FingerprintDb::from_json(&text).unwrap();
        assert_eq!(back, db);
        assert_eq!(back.to_json(), text);

        let mut bad = db.clone();
        bad.rules[0].confidence = 1.3;
        assert!(matches!(
            FingerprintDb::from_json(&bad.to_json()),
            Err(MineError::CorruptDb(_))
        ));

        let mut v = db.clone();
        v.schema_version = 9;
        assert!(matches!(
            FingerprintDb::from_json(&v.to_json()),
            Err(MineError::SchemaMismatch { found: 9, .. })
        ));

        let mut dup = db.clone();
        dup.rules.push(dup.rules[0].clone());
        assert!(matches!(
            FingerprintDb::from_json(&dup.to_json()),
            Err(MineError::CorruptDb(_))
        ));
    }

    #[test]
    fn ceiling_rounding() {
        let cfg = MineConfig::default();
        assert_eq!(cfg.ceiling(12), 2);
        assert_eq!(cfg.ceiling(30), 3);
        assert_eq!(cfg.ceiling(0), 0);
    }
}
