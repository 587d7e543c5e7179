//! Ranks labeled fingerprints against observed symptom sets by Jaccard
//! distance.

use std::collections::BTreeMap;

use fogdna::fingerprint::{mine_rare_rules, FingerprintDb, MineConfig, SymptomItem, Transaction};
use fogdna::ingest::CellWindowKey;
use fogdna::rca::{diagnose, EventRef, RcaConfig, SymptomSet};

fn key(i: i64) -> CellWindowKey {
    CellWindowKey {
        cell_id: "cell000".into(),
        window_start: i * 300,
    }
}

fn main() {
    let (prb, rtt, loss) = (
        SymptomItem::high("prb_utilization"),
        SymptomItem::high("rtt"),
        SymptomItem::high("packet_loss"),
    );
    let mut transactions = Vec::new();
    for i in 0..3 {
        transactions.push(Transaction {
            items: [prb.clone(), rtt.clone()].into(),
            consequent: "web_delay".into(),
            key: key(i),
        });
        transactions.push(Transaction {
            items: [loss.clone(), rtt.clone()].into(),
            consequent: "web_delay".into(),
            key: key(10 + i),
        });
    }
    for i in 0..14 {
        transactions.push(Transaction {
            items: Default::default(),
            consequent: "dl_throughput".into(),
            key: key(20 + i),
        });
    }
    let cfg = MineConfig {
        s_min_count: 2,
        s_max_fraction: 0.3,
        ..MineConfig::default()
    };
    let rules = mine_rare_rules(&transactions, &cfg);

    // rtt alone is shared by both causes and stays unlabeled
    let labels: BTreeMap<_, _> = rules
        .iter()
        .filter_map(|r| {
            let cause = if r.antecedent.contains(&prb) {
                "congestion"
            } else if r.antecedent.contains(&loss) {
                "backhaul_degradation"
            } else {
                return None;
            };
            Some((r.key(), cause.to_string()))
        })
        .collect();
    let db = FingerprintDb::empty().update(&rules, transactions.len() as u64, &labels, 0);
    println!("db holds {} rules", db.rules.len());

    let rca = RcaConfig::default();
    for observed in [
        vec![prb.clone(), rtt.clone()],
        vec![loss.clone()],
        vec![SymptomItem::low("sinr")],
    ] {
        let set = SymptomSet {
            items: observed.iter().cloned().collect(),
            consequent: "web_delay".into(),
            event_ref: EventRef {
                cell_id: "cell001".into(),
                metric_name: "web_delay".into(),
                start_window: 0,
            },
        };
        let d = diagnose(&db, &set, rca.k, rca.match_threshold);
        let shown: Vec<String> = observed.iter().map(|i| i.to_string()).collect();
        match (d.matched, d.ranked.first()) {
            (true, Some(top)) => println!(
                "[{}] -> {} at distance {:.2}",
                shown.join(", "),
                top.cause_label.as_deref().unwrap_or("(unlabeled)"),
                top.distance
            ),
            _ => println!(
                "[{}] -> unknown cause, candidate for fingerprint learning",
                shown.join(", ")
            ),
        }
    }
}
