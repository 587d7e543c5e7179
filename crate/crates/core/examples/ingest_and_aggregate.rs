//! Parses a small CDR extract from memory and rolls it up into the three
//! per-window KQIs.

use fogdna::ingest::{self, MetricCatalog};

const CDR: &str = "\
cell_id,start_time,duration,dropped,source_hash,dest_hash
cellA,1700000000,120,0,a1,b1
cellA,1700000050,30,1,a2,b2
cellA,1700000400,95,0,a3,b3
cellB,1700000010,60,0,a4,b4
cellB,1700000020,0,1,a5,b5
";

fn main() -> Result<(), fogdna::Error> {
    let records = ingest::read_cdr(CDR.as_bytes())?;
    println!("{} CDR records", records.len());

    let window = 300;
    for s in ingest::aggregate_cdr(&records, window) {
        let values: Vec<String> = s
            .points
            .iter()
            .map(|p| {
                format!(
                    "{}={}",
                    p.window_start,
                    p.value.map_or("-".into(), |v| format!("{v:.2}"))
                )
            })
            .collect();
        println!("{:6} {:14} {}", s.cell_id, s.metric_name, values.join("  "));
    }

    let mut catalog = MetricCatalog::default();
    for (name, entry) in ingest::cdr_catalog_entries(window) {
        catalog.insert(name, entry);
    }
    println!(
        "\ncatalog:\n{}",
        serde_json::to_string_pretty(&catalog).expect("catalog serializes")
    );
    Ok(())
}
