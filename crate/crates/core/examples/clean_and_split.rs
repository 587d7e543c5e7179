//! Splits one series chronologically, then removes missing values and gross
//! outliers from the training part only.

use fogdna::cleaning::{chrono_split, clean, CleanConfig};
use fogdna::ingest::{MetricKind, MetricSeries, Point, Polarity};

fn main() -> Result<(), fogdna::Error> {
    let points: Vec<Point> = (0..100)
        .map(|i| {
            let t = 1_700_000_000 + i * 300;
            let v = match i {
                7 | 31 => None,
                12 => Some(50_000.0),
                _ => Some(100.0 + (i % 9) as f64),
            };
            Point::new(t, v)
        })
        .collect();
    let series =
        MetricSeries::new("cellA", "web_delay", MetricKind::Kqi, Polarity::HigherIsWorse, 300).with_points(points);

    let (train, test) = chrono_split(&series, 0.7)?;
    println!("split: {} train / {} test points", train.len(), test.len());

    let (cleaned, report) = clean(&train, &CleanConfig::default())?;
    println!(
        "cleaned train: {} points ({} missing, {} extremes removed)",
        cleaned.len(),
        report.missing_removed,
        report.extremes_removed
    );
    let max = cleaned.present_values().fold(f64::MIN, f64::max);
    println!("largest kept value {max}");
    Ok(())
}
