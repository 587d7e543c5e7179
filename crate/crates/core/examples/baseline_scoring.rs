//! Fits per-hour histogram baselines on two partitions, merges them and
//! scores fresh values with the robust z-score.

use std::collections::BTreeMap;

use fogdna::baseline::{fit_baseline, merge_baselines, robust_score, BaselineConfig, SeriesKey};
use fogdna::ingest::{MetricKind, MetricSeries, Point, Polarity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn series(cell: &str, rng: &mut ChaCha8Rng) -> MetricSeries {
    // four days of 5-minute windows, level 20 with small noise
    let points = (0..4 * 288)
        .map(|i| Point::new(i * 300, Some(20.0 + rng.random_range(-1.0..1.0))))
        .collect();
    MetricSeries::new(cell, "dl_throughput", MetricKind::Kqi, Polarity::LowerIsWorse, 300).with_points(points)
}

fn main() -> Result<(), fogdna::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (a, b) = (series("cellA", &mut rng), series("cellB", &mut rng));
    let cfg = BaselineConfig {
        fixed_bounds: BTreeMap::from([("dl_throughput".to_string(), [0.0, 40.0])]),
        ..BaselineConfig::default()
    };

    let pooled = fit_baseline(&[a.clone(), b.clone()], &cfg)?;
    let merged = merge_baselines(&[fit_baseline(&[a], &cfg)?, fit_baseline(&[b], &cfg)?])?;
    println!("{} keys; merged equals pooled: {}", pooled.len(), merged == pooled);

    let key = SeriesKey::new("cellA", "dl_throughput", 10);
    let stats = pooled.stats(&key)?;
    println!("hour 10: median {:.3}, MAD {:.3}", stats.median, stats.mad);
    for v in [20.2, 18.0, 12.0, 28.0] {
        let s = robust_score(&pooled, &key, v)?;
        println!(
            "value {v:5.1}: score {:6.2} {:?} degrading={} flagged={}",
            s.score,
            s.direction,
            s.degrading,
            s.score >= cfg.tau && s.degrading
        );
    }
    Ok(())
}
