//! Mines rare KPI-symptom rules for degraded KQIs, once directly and once
//! by merging per-site count tables.

use fogdna::fingerprint::{mine_rare_rules, ItemsetCounts, MineConfig, SymptomItem, Transaction};
use fogdna::ingest::CellWindowKey;

fn tx(i: i64, items: &[SymptomItem], kqi: &str) -> Transaction {
    Transaction {
        items: items.iter().cloned().collect(),
        consequent: kqi.into(),
        key: CellWindowKey {
            cell_id: format!("cell{:03}", i % 7),
            window_start: i * 300,
        },
    }
}

fn main() -> Result<(), fogdna::Error> {
    let (prb, rtt, sinr, bler) = (
        SymptomItem::high("prb_utilization"),
        SymptomItem::high("rtt"),
        SymptomItem::low("sinr"),
        SymptomItem::high("bler"),
    );
    let mut transactions = Vec::new();
    for i in 0..3 {
        transactions.push(tx(i, &[prb.clone(), rtt.clone()], "web_delay"));
        transactions.push(tx(10 + i, &[sinr.clone(), bler.clone()], "dl_throughput"));
    }
    for i in 0..6 {
        transactions.push(tx(20 + i, &[], if i % 2 == 0 { "web_delay" } else { "dl_throughput" }));
    }

    let cfg = MineConfig {
        s_min_count: 2,
        s_max_fraction: 0.3,
        ..MineConfig::default()
    };
    let rules = mine_rare_rules(&transactions, &cfg);
    for r in &rules {
        let ante: Vec<String> = r.antecedent.iter().map(|i| i.to_string()).collect();
        println!(
            "{{{}}} -> {}  support {}  confidence {:.2}  lift {:.2}",
            ante.join(", "),
            r.consequent,
            r.support_count,
            r.confidence,
            r.lift
        );
    }

    let (left, right) = transactions.split_at(5);
    let mut counts = ItemsetCounts::from_transactions(left, cfg.max_antecedent);
    counts.merge(&ItemsetCounts::from_transactions(right, cfg.max_antecedent))?;
    println!(
        "\nmerged count tables give the same rules: {}",
        counts.mine(&cfg)? == rules
    );
    Ok(())
}
