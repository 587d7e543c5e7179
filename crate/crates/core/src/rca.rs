//! Root-cause diagnosis: k-nearest fingerprints by Jaccard distance.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::fingerprint::{FingerprintDb, Itemset, SymptomItem};
use crate::postfilter::AnomalyEvent;

/// `1 - |a ∩ b| / |a ∪ b|`, and 0 for two empty sets.
pub fn jaccard_distance(a: &BTreeSet<SymptomItem>, b: &BTreeSet<SymptomItem>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        0.0
    } else {
        1.0 - inter as f64 / union as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRef {
    pub cell_id: String,
    pub metric_name: String,
    pub start_window: i64,
}

impl From<&AnomalyEvent> for EventRef {
    fn from(e: &AnomalyEvent) -> Self {
        EventRef {
            cell_id: e.cell_id.clone(),
            metric_name: e.metric_name.clone(),
            start_window: e.start_window,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymptomSet {
    pub items: BTreeSet<SymptomItem>,
    pub consequent: String,
    pub event_ref: EventRef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    /// `None` for an unlabeled fingerprint.
    pub cause_label: Option<String>,
    pub distance: f64,
    pub antecedent: Itemset,
    pub consequent: String,
    pub confidence: f64,
    pub support_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub ranked: Vec<Candidate>,
    pub matched: bool,
    pub match_threshold: f64,
}

impl Diagnosis {
    pub fn top_label(&self) -> Option<&str> {
        self.ranked.first().and_then(|c| c.cause_label.as_deref())
    }
}

/// One line of the diagnoses output: the event, the symptoms observed at
/// its peak and the ranked causes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosedEvent {
    pub event: AnomalyEvent,
    pub symptoms: Itemset,
    pub diagnosis: Diagnosis,
}

fn candidate_order(a: &Candidate, b: &Candidate) -> Ordering {
    a.distance
        .total_cmp(&b.distance)
        .then(b.confidence.total_cmp(&a.confidence))
        .then(b.support_count.cmp(&a.support_count))
        .then_with(|| a.antecedent.cmp(&b.antecedent))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RcaConfig {
    pub k: usize,
    pub match_threshold: f64,
}

impl Default for RcaConfig {
    fn default() -> Self {
        RcaConfig {
            k: 3,
            match_threshold: 0.5,
        }
    }
}

impl RcaConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.k < 1 {
            return Err("k must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.match_threshold) {
            return Err("match_threshold must lie in [0, 1]".into());
        }
        Ok(())
    }
}

/// Ranks the fingerprints explaining `s.consequent` by distance to the
/// observed symptoms and keeps the `k` nearest.
pub fn diagnose(db: &FingerprintDb, s: &SymptomSet, k: usize, match_threshold: f64) -> Diagnosis {
    let mut ranked: Vec<Candidate> = db
        .rules
        .iter()
        .filter(|r| r.consequent == s.consequent)
        .map(|r| {
            let ante: BTreeSet<SymptomItem> = r.antecedent.iter().cloned().collect();
            Candidate {
                cause_label: r.cause_label.clone(),
                distance: jaccard_distance(&ante, &s.items),
                antecedent: r.antecedent.clone(),
                consequent: r.consequent.clone(),
                confidence: r.confidence,
                support_count: r.support_count,
            }
        })
        .collect();
    ranked.sort_by(candidate_order);
    ranked.truncate(k);
    let matched = ranked.first().is_some_and(|c| c.distance <= match_threshold);
    Diagnosis {
        ranked,
        matched,
        match_threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::{Fingerprint, LabelMap};
    use proptest::prelude::*;

    fn set(items: &[&str]) -> BTreeSet<SymptomItem> {
        items.iter().map(|s| SymptomItem::high(*s)).collect()
    }

    fn rule(items: &[&str], q: &str, label: Option<&str>, conf: f64, count: u64) -> Fingerprint {
        Fingerprint {
            antecedent: set(items).into_iter().collect(),
            consequent: q.into(),
            support: 0.1,
            support_count: count,
            antecedent_count: (count as f64 / conf).round() as u64,
            confidence: conf,
            lift: 2.0,
            cause_label: label.map(String::from),
        }
    }

    fn query(items: &[&str], q: &str) -> SymptomSet {
        SymptomSet {
            items: set(items),
            consequent: q.into(),
            event_ref: EventRef {
                cell_id: "c".into(),
                metric_name: q.into(),
                start_window: 0,
            },
        }
    }

    fn db(rules: Vec<Fingerprint>) -> FingerprintDb {
        FingerprintDb::empty().update(&rules, 100, &LabelMap::new(), 0)
    }

    #[test]
    fn jaccard_examples() {
        assert_eq!(jaccard_distance(&set(&["a", "b"]), &set(&["a", "b"])), 0.0);
        assert!((jaccard_distance(&set(&["a", "b"]), &set(&["b", "c"])) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(jaccard_distance(&set(&["a"]), &set(&["b"])), 1.0);
        assert_eq!(jaccard_distance(&set(&[]), &set(&[])), 0.0);
        assert_eq!(jaccard_distance(&set(&[]), &set(&["a"])), 1.0);
    }

    #[test]
    fn exact_signature_match() {
        let d = db(vec![rule(&["RTT"], "Q", Some("congestion"), 1.0, 3)]);
        let out = diagnose(&d, &query(&["RTT"], "Q"), 3, 0.5);
        assert!(out.matched);
        assert_eq!(out.top_label(), Some("congestion"));
        assert_eq!(out.ranked[0].distance, 0.0);

        let out = diagnose(&d, &query(&["LOSS"], "Q"), 3, 0.5);
        assert_eq!(out.ranked[0].distance, 1.0);
        assert!(!out.matched);

        let out = diagnose(&d, &query(&["RTT"], "R"), 3, 0.5);
        assert!(out.ranked.is_empty() && !out.matched);
    }

    #[test]
    fn tie_breaks_and_truncation() {
        let d = db(vec![
            rule(&["a", "x"], "Q", Some("one"), 0.9, 3),
            rule(&["a", "y"], "Q", Some("two"), 1.0, 3),
            rule(&["a", "z"], "Q", Some("three"), 1.0, 5),
            rule(&["b"], "Q", None, 1.0, 9),
        ]);
        let out = diagnose(&d, &query(&["a"], "Q"), 2, 0.5);
        assert_eq!(out.ranked.len(), 2);
        // all three at distance 0.5; higher confidence, then higher support first
        assert_eq!(out.top_label(), Some("three"));
        assert_eq!(out.ranked[1].cause_label.as_deref(), Some("two"));
        assert!(out.matched);
    }

    fn arb_set() -> impl Strategy<Value = BTreeSet<SymptomItem>> {
        prop::collection::btree_set((0u8..6, any::<bool>()), 0..6).prop_map(|s| {
            s.into_iter()
                .map(|(m, hi)| {
                    let name = format!("k{m}");
                    if hi {
                        SymptomItem::high(name)
                    } else {
                        SymptomItem::low(name)
                    }
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn jaccard_is_a_metric(a in arb_set(), b in arb_set(), c in arb_set()) {
            let ab = jaccard_distance(&a, &b);
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, jaccard_distance(&b, &a));
            prop_assert_eq!(ab == 0.0, a == b);
            prop_assert!(ab <= jaccard_distance(&a, &c) + jaccard_distance(&c, &b) + 1e-12);
        }

        #[test]
        fn top1_ignores_rule_order(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), q in arb_set()) {
            let rules = vec![
                rule(&["k0"], "Q", Some("a"), 1.0, 3),
                rule(&["k1"], "Q", Some("b"), 1.0, 3),
                rule(&["k0", "k1"], "Q", Some("c"), 0.9, 4),
                rule(&["k2"], "Q", None, 0.8, 2),
                rule(&["k3", "k4"], "Q", Some("d"), 1.0, 2),
            ];
            let shuffled = FingerprintDb { rules: perm.iter().map(|&i| rules[i].clone()).collect(), ..db(vec![]) };
            let base = diagnose(&db(rules), &SymptomSet { items: q.clone(), ..query(&[], "Q") }, 3, 0.5);
            let other = diagnose(&shuffled, &SymptomSet { items: q, ..query(&[], "Q") }, 3, 0.5);
            prop_assert_eq!(base, other);
        }
    }
}
