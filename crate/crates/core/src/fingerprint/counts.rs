use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{
    decode, encode, fpgrowth, item_ranking, rule_from_counts, rule_order, Fingerprint, Itemset, MineConfig, MineError,
    Transaction,
};

/// Complete itemset count tables for one partition of transactions.
///
/// Every itemset up to `max_len` items that occurs at all is counted, both
/// over all transactions and per consequent. Tables from disjoint
/// partitions add up to the pooled tables, so mining the merged table
/// equals mining the pooled transactions.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemsetCounts {
    pub max_len: usize,
    pub transaction_total: u64,
    pub consequent_counts: BTreeMap<String, u64>,
    pub antecedent_counts: BTreeMap<Itemset, u64>,
    pub joint_counts: BTreeMap<String, BTreeMap<Itemset, u64>>,
}

impl ItemsetCounts {
    pub fn empty(max_len: usize) -> Self {
        ItemsetCounts {
            max_len,
            transaction_total: 0,
            consequent_counts: BTreeMap::new(),
            antecedent_counts: BTreeMap::new(),
            joint_counts: BTreeMap::new(),
        }
    }

    /// Local FP-Growth at floor 1 over one partition.
    pub fn from_transactions(transactions: &[Transaction], max_len: usize) -> Self {
        let mut out = Self::empty(max_len);
        out.transaction_total = transactions.len() as u64;
        let ranking = item_ranking(transactions);
        let rank: HashMap<_, u32> = ranking.iter().enumerate().map(|(i, it)| (it, i as u32)).collect();

        let mut by_consequent: BTreeMap<&str, Vec<Vec<u32>>> = BTreeMap::new();
        let mut all = Vec::with_capacity(transactions.len());
        for t in transactions {
            let e = encode(&t.items, &rank);
            by_consequent.entry(&t.consequent).or_default().push(e.clone());
            all.push(e);
        }
        for (ids, c) in fpgrowth::frequent_itemsets(&all, ranking.len(), 1, max_len) {
            out.antecedent_counts.insert(decode(&ids, &ranking), c);
        }
        for (q, txs) in by_consequent {
            out.consequent_counts.insert(q.to_string(), txs.len() as u64);
            let joint = out.joint_counts.entry(q.to_string()).or_default();
            for (ids, c) in fpgrowth::frequent_itemsets(&txs, ranking.len(), 1, max_len) {
                joint.insert(decode(&ids, &ranking), c);
            }
        }
        out
    }

    pub fn merge(&mut self, other: &ItemsetCounts) -> Result<(), MineError> {
        if self.max_len != other.max_len {
            return Err(MineError::CountDepth(other.max_len, self.max_len));
        }
        self.transaction_total += other.transaction_total;
        add_all(&mut self.consequent_counts, &other.consequent_counts);
        add_all(&mut self.antecedent_counts, &other.antecedent_counts);
        for (q, m) in &other.joint_counts {
            add_all(self.joint_counts.entry(q.clone()).or_default(), m);
        }
        Ok(())
    }

    /// Applies the rarity band and rule thresholds to the counted itemsets.
    pub fn mine(&self, cfg: &MineConfig) -> Result<Vec<Fingerprint>, MineError> {
        if cfg.max_antecedent > self.max_len {
            return Err(MineError::CountDepth(self.max_len, cfg.max_antecedent));
        }
        let mut rules = Vec::new();
        for (q, joint) in &self.joint_counts {
            let qc = self.consequent_counts[q];
            for (items, &c) in joint {
                let ac = self.antecedent_counts[items];
                if let Some(r) = rule_from_counts(items.clone(), q, c, ac, qc, self.transaction_total, cfg) {
                    rules.push(r);
                }
            }
        }
        rules.sort_by(rule_order);
        Ok(rules)
    }

    pub fn to_json(&self) -> String {
        let doc = CountsDocument {
            max_len: self.max_len,
            transaction_total: self.transaction_total,
            consequent_counts: self.consequent_counts.clone(),
            antecedent_counts: self.antecedent_counts.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            joint_counts: self
                .joint_counts
                .iter()
                .map(|(q, m)| (q.clone(), m.iter().map(|(k, v)| (k.clone(), *v)).collect()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("counts serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, MineError> {
        let doc: CountsDocument = serde_json::from_str(text)?;
        Ok(ItemsetCounts {
            max_len: doc.max_len,
            transaction_total: doc.transaction_total,
            consequent_counts: doc.consequent_counts,
            antecedent_counts: doc.antecedent_counts.into_iter().collect(),
            joint_counts: doc
                .joint_counts
                .into_iter()
                .map(|(q, v)| (q, v.into_iter().collect()))
                .collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CountsDocument {
    max_len: usize,
    transaction_total: u64,
    consequent_counts: BTreeMap<String, u64>,
    antecedent_counts: Vec<(Itemset, u64)>,
    joint_counts: BTreeMap<String, Vec<(Itemset, u64)>>,
}

fn add_all<K: Ord + Clone>(acc: &mut BTreeMap<K, u64>, other: &BTreeMap<K, u64>) {
    for (k, v) in other {
        *acc.entry(k.clone()).or_default() += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::{mine_rare_rules, SymptomItem};
    use crate::ingest::CellWindowKey;
    use proptest::prelude::*;

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

    fn sample() -> Vec<Transaction> {
        vec![
            tx(&["a", "b"], "Q"),
            tx(&["a", "b", "c"], "Q"),
            tx(&["a"], "R"),
            tx(&["b", "c"], "R"),
            tx(&["a", "b"], "Q"),
            tx(&[], "R"),
        ]
    }

    #[test]
    fn partition_counts_add_up() {
        let t = sample();
        let pooled = ItemsetCounts::from_transactions(&t, 4);
        let mut merged = ItemsetCounts::from_transactions(&t[..2], 4);
        merged.merge(&ItemsetCounts::from_transactions(&t[2..5], 4)).unwrap();
        merged.merge(&ItemsetCounts::from_transactions(&t[5..], 4)).unwrap();
        assert_eq!(merged, pooled);
        assert_eq!(pooled.antecedent_counts[&vec![SymptomItem::high("a")]], 4);
    }

    #[test]
    fn mining_counts_equals_fp_growth() {
        let t = sample();
        let cfg = MineConfig {
            s_min_count: 1,
            s_max_fraction: 0.5,
            c_min: 0.3,
            lift_min: 0.0,
            max_antecedent: 3,
        };
        let counts = ItemsetCounts::from_transactions(&t, 3);
        assert_eq!(counts.mine(&cfg).unwrap(), mine_rare_rules(&t, &cfg));
    }

    #[test]
    fn depth_and_json() {
        let counts = ItemsetCounts::from_transactions(&sample(), 2);
        assert!(matches!(
            counts.mine(&MineConfig::default()),
            Err(MineError::CountDepth(2, 4))
        ));
        let back = ItemsetCounts::from_json(&counts.to_json()).unwrap();
        assert_eq!(back, counts);
        let mut other = ItemsetCounts::empty(3);
        assert!(other.merge(&counts).is_err());
    }

    #[test]
    fn anti_monotone_counts() {
        let counts = ItemsetCounts::from_transactions(&sample(), 4);
        for (set, &c) in &counts.antecedent_counts {
            for skip in 0..set.len() {
                let sub: Itemset = set
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, x)| x.clone())
                    .collect();
                if !sub.is_empty() {
                    assert!(c <= counts.antecedent_counts[&sub]);
                }
            }
        }
    }

    fn arb_transactions() -> impl Strategy<Value = Vec<Transaction>> {
        let one = (proptest::collection::btree_set(0u8..6, 0..5), 0u8..2).prop_map(|(items, q)| Transaction {
            items: items.into_iter().map(|i| SymptomItem::high(format!("k{i}"))).collect(),
            consequent: format!("q{q}"),
            key: CellWindowKey {
                cell_id: "c".into(),
                window_start: 0,
            },
        });
        proptest::collection::vec(one, 0..30)
    }

    proptest! {
        #[test]
        fn any_split_merges_to_pooled(t in arb_transactions(), cut in 0usize..30) {
            let cut = cut.min(t.len());
            let mut merged = ItemsetCounts::from_transactions(&t[..cut], 3);
            merged.merge(&ItemsetCounts::from_transactions(&t[cut..], 3)).unwrap();
            prop_assert_eq!(&merged, &ItemsetCounts::from_transactions(&t, 3));
            let cfg = MineConfig { s_min_count: 1, s_max_fraction: 0.6, c_min: 0.5, lift_min: 1.0, max_antecedent: 3 };
            prop_assert_eq!(merged.mine(&cfg).unwrap(), mine_rare_rules(&t, &cfg));
        }
    }
}
