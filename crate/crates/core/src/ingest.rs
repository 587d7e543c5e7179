//! CDR and KQI/KPI file ingestion, and cell-level CDR aggregation.
//!
//! Subscriber identifiers only ever enter the crate as opaque hashes, and
//! [`aggregate_cdr`] drops them: its output carries per-cell counts and
//! means only.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CDR_HEADER: [&str; 6] = [
    "cell_id",
    "start_time",
    "duration",
    "dropped",
    "source_hash",
    "dest_hash",
];
pub const METRIC_HEADER: [&str; 4] = ["cell_id", "metric_name", "window_start", "value"];

pub const CALL_ATTEMPTS: &str = "call_attempts";
pub const DROP_RATE: &str = "drop_rate";
pub const MEAN_DURATION: &str = "mean_duration";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed header: expected `{expected}`, found `{found}`")]
    MalformedHeader { expected: String, found: String },
    #[error("{} malformed row(s), first at line {}: {}", .0.len(), .0[0].line, .0[0].reason)]
    MalformedRows(Vec<RowError>),
    #[error("metric `{0}` is not in the catalog")]
    UnknownMetric(String),
    #[error("metric `{metric}` is declared {declared:?} but was read as {requested:?}")]
    KindMismatch {
        metric: String,
        declared: MetricKind,
        requested: MetricKind,
    },
    #[error("duplicate point for cell `{}`, metric `{}`, window {}", .0.cell_id, .0.metric_name, .0.window_start)]
    DuplicatePoint(PointKey),
    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    /// 1-based line number in the file; the header is line 1.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointKey {
    pub cell_id: String,
    pub metric_name: String,
    pub window_start: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MetricKind {
    Kqi,
    Kpi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Polarity {
    HigherIsWorse,
    LowerIsWorse,
}

/// One call detail record. The two party fields are opaque hashes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdrRecord {
    pub cell_id: String,
    pub start_time: i64,
    pub duration: u64,
    pub dropped: bool,
    pub source_hash: String,
    pub dest_hash: String,
}

/// Identifies one aggregation bucket.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellWindowKey {
    pub cell_id: String,
    pub window_start: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub window_start: i64,
    /// `None` marks a missing measurement.
    pub value: Option<f64>,
}

impl Point {
    pub fn new(window_start: i64, value: Option<f64>) -> Self {
        Point { window_start, value }
    }
}

/// Per-cell values of one metric on a fixed window grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSeries {
    pub cell_id: String,
    pub metric_name: String,
    pub kind: MetricKind,
    pub polarity: Polarity,
    pub window_len: i64,
    pub points: Vec<Point>,
}

impl MetricSeries {
    pub fn new(
        cell_id: impl Into<String>,
        metric_name: impl Into<String>,
        kind: MetricKind,
        polarity: Polarity,
        window_len: i64,
    ) -> Self {
        MetricSeries {
            cell_id: cell_id.into(),
            metric_name: metric_name.into(),
            kind,
            polarity,
            window_len,
            points: Vec::new(),
        }
    }

    pub fn with_points(mut self, points: Vec<Point>) -> Self {
        self.points = points;
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same identity and metadata, no points.
    pub fn empty_like(&self) -> Self {
        MetricSeries {
            points: Vec::new(),
            ..self.clone()
        }
    }

    pub fn present_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().filter_map(|p| p.value)
    }

    /// Value at `window_start`, `None` if the window is absent or missing.
    pub fn value_at(&self, window_start: i64) -> Option<f64> {
        self.points
            .binary_search_by_key(&window_start, |p| p.window_start)
            .ok()
            .and_then(|i| self.points[i].value)
    }

    /// Checks the grid invariant: strictly increasing multiples of `window_len`.
    pub fn is_on_grid(&self) -> bool {
        self.window_len > 0
            && self
                .points
                .iter()
                .all(|p| p.window_start.rem_euclid(self.window_len) == 0)
            && self.points.windows(2).all(|w| w[0].window_start < w[1].window_start)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub kind: MetricKind,
    pub polarity: Polarity,
    pub window_len_seconds: i64,
    /// Declared value range, used as fixed sketch bounds when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
}

/// Metric name → declared kind, polarity, window length and optional range.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MetricCatalog {
    pub metrics: BTreeMap<String, CatalogEntry>,
}

impl MetricCatalog {
    pub fn insert(&mut self, name: impl Into<String>, entry: CatalogEntry) {
        self.metrics.insert(name.into(), entry);
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.metrics.get(name)
    }

    pub fn names_of(&self, kind: MetricKind) -> impl Iterator<Item = &str> {
        self.metrics
            .iter()
            .filter(move |(_, e)| e.kind == kind)
            .map(|(n, _)| n.as_str())
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        for (name, e) in &self.metrics {
            if e.window_len_seconds <= 0 {
                return Err(IngestError::InvalidCatalog(format!(
                    "`{name}` has non-positive window_len_seconds"
                )));
            }
            if let Some([lo, hi]) = e.range {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(IngestError::InvalidCatalog(format!(
                        "`{name}` has an empty or non-finite range"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let catalog: MetricCatalog =
            serde_json::from_str(&text).map_err(|e| IngestError::InvalidCatalog(e.to_string()))?;
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn save(&self, path: &Path) -> Result<(), IngestError> {
        let mut text = serde_json::to_string_pretty(self).expect("catalog serializes");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| io_err(path, e))
    }
}

fn io_err(path: &Path, source: std::io::Error) -> IngestError {
    IngestError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<(), IngestError> {
    if found.iter().eq(expected.iter().copied()) {
        Ok(())
    } else {
        Err(IngestError::MalformedHeader {
            expected: expected.join(","),
            found: found.iter().collect::<Vec<_>>().join(","),
        })
    }
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader)
}

pub fn parse_cdr(path: &Path) -> Result<Vec<CdrRecord>, IngestError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    read_cdr(file)
}

/// Reads CDR rows. Every bad row is collected before failing.
pub fn read_cdr<R: Read>(reader: R) -> Result<Vec<CdrRecord>, IngestError> {
    let mut rdr = csv_reader(reader);
    check_header(rdr.headers()?, &CDR_HEADER)?;
    let mut records = Vec::new();
    let mut bad = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let row = row?;
        match cdr_from_row(&row) {
            Ok(r) => records.push(r),
            Err(reason) => bad.push(RowError { line, reason }),
        }
    }
    if bad.is_empty() {
        Ok(records)
    } else {
        Err(IngestError::MalformedRows(bad))
    }
}

fn cdr_from_row(row: &csv::StringRecord) -> Result<CdrRecord, String> {
    if row.len() != CDR_HEADER.len() {
        return Err(format!("expected 6 fields, found {}", row.len()));
    }
    let start_time = row[1]
        .parse::<i64>()
        .map_err(|_| format!("bad start_time `{}`", &row[1]))?;
    let duration = row[2]
        .parse::<u64>()
        .map_err(|_| format!("bad duration `{}`", &row[2]))?;
    let dropped = match &row[3] {
        "0" => false,
        "1" => true,
        other => return Err(format!("bad dropped flag `{other}`")),
    };
    if row[0].is_empty() {
        return Err("empty cell_id".into());
    }
    Ok(CdrRecord {
        cell_id: row[0].to_string(),
        start_time,
        duration,
        dropped,
        source_hash: row[4].to_string(),
        dest_hash: row[5].to_string(),
    })
}

pub fn write_cdr<W: Write>(records: &[CdrRecord], writer: W) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CDR_HEADER)?;
    for r in records {
        w.write_record([
            r.cell_id.as_str(),
            &r.start_time.to_string(),
            &r.duration.to_string(),
            if r.dropped { "1" } else { "0" },
            &r.source_hash,
            &r.dest_hash,
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn parse_metric_csv(
    path: &Path,
    kind: MetricKind,
    catalog: &MetricCatalog,
) -> Result<Vec<MetricSeries>, IngestError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    read_metric_csv(file, kind, catalog)
}

/// Reads metric rows, groups them by (cell, metric) and fills grid gaps
/// with missing points. Output is ordered by (cell_id, metric_name).
pub fn read_metric_csv<R: Read>(
    reader: R,
    kind: MetricKind,
    catalog: &MetricCatalog,
) -> Result<Vec<MetricSeries>, IngestError> {
    let mut rdr = csv_reader(reader);
    check_header(rdr.headers()?, &METRIC_HEADER)?;
    let mut groups: BTreeMap<(String, String), BTreeMap<i64, Option<f64>>> = BTreeMap::new();
    let mut bad = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let row = row?;
        if row.len() != METRIC_HEADER.len() {
            bad.push(RowError {
                line,
                reason: format!("expected 4 fields, found {}", row.len()),
            });
            continue;
        }
        let metric = &row[1];
        let entry = catalog
            .get(metric)
            .ok_or_else(|| IngestError::UnknownMetric(metric.to_string()))?;
        if entry.kind != kind {
            return Err(IngestError::KindMismatch {
                metric: metric.to_string(),
                declared: entry.kind,
                requested: kind,
            });
        }
        let window_start = match row[2].parse::<i64>() {
            Ok(w) if w.rem_euclid(entry.window_len_seconds) == 0 => w,
            Ok(w) => {
                bad.push(RowError {
                    line,
                    reason: format!("window_start {w} is off the {}s grid", entry.window_len_seconds),
                });
                continue;
            }
            Err(_) => {
                bad.push(RowError {
                    line,
                    reason: format!("bad window_start `{}`", &row[2]),
                });
                continue;
            }
        };
        let value = if row[3].is_empty() {
            None
        } else {
            match row[3].parse::<f64>() {
                Ok(v) if v.is_finite() => Some(v),
                _ => {
                    bad.push(RowError {
                        line,
                        reason: format!("bad value `{}`", &row[3]),
                    });
                    continue;
                }
            }
        };
        let points = groups.entry((row[0].to_string(), metric.to_string())).or_default();
        if points.insert(window_start, value).is_some() {
            return Err(IngestError::DuplicatePoint(PointKey {
                cell_id: row[0].to_string(),
                metric_name: metric.to_string(),
                window_start,
            }));
        }
    }
    if !bad.is_empty() {
        return Err(IngestError::MalformedRows(bad));
    }

    Ok(groups
        .into_iter()
        .map(|((cell_id, metric_name), points)| {
            let entry = &catalog.metrics[&metric_name];
            let series = MetricSeries::new(
                cell_id,
                metric_name,
                entry.kind,
                entry.polarity,
                entry.window_len_seconds,
            );
            series.with_points(fill_grid(&points, entry.window_len_seconds))
        })
        .collect())
}

fn fill_grid(points: &BTreeMap<i64, Option<f64>>, window_len: i64) -> Vec<Point> {
    let (Some((&first, _)), Some((&last, _))) = (points.first_key_value(), points.last_key_value()) else {
        return Vec::new();
    };
    (0..=(last - first) / window_len)
        .map(|i| {
            let w = first + i * window_len;
            Point::new(w, points.get(&w).copied().flatten())
        })
        .collect()
}

/// Writes series in the metric CSV schema; missing points become empty fields.
pub fn write_metric_csv<W: Write>(series: &[MetricSeries], writer: W) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(METRIC_HEADER)?;
    for s in series {
        for p in &s.points {
            let value = p.value.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([
                s.cell_id.as_str(),
                s.metric_name.as_str(),
                &p.window_start.to_string(),
                &value,
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Default)]
struct WindowTally {
    attempts: u64,
    dropped: u64,
    total_duration: u64,
}

/// Aggregates call records into three per-cell KQI series.
///
/// A call belongs to the window containing its start time. Each cell's grid
/// spans its first to last occupied window; empty windows inside that span
/// carry zero attempts and missing rate/duration. Output is ordered by
/// (cell_id, metric_name).
pub fn aggregate_cdr(records: &[CdrRecord], window_len: i64) -> Vec<MetricSeries> {
    assert!(window_len > 0, "window_len must be positive");
    let mut cells: BTreeMap<&str, BTreeMap<i64, WindowTally>> = BTreeMap::new();
    for r in records {
        let w = r.start_time.div_euclid(window_len) * window_len;
        let t = cells.entry(&r.cell_id).or_default().entry(w).or_default();
        t.attempts += 1;
        t.dropped += u64::from(r.dropped);
        t.total_duration += r.duration;
    }

    let mut out = Vec::with_capacity(cells.len() * 3);
    for (cell, windows) in cells {
        let first = *windows.keys().next().expect("non-empty cell");
        let last = *windows.keys().next_back().expect("non-empty cell");
        let grid: Vec<i64> = (0..=(last - first) / window_len)
            .map(|i| first + i * window_len)
            .collect();

        let mut attempts = Vec::with_capacity(grid.len());
        let mut drop_rate = Vec::with_capacity(grid.len());
        let mut mean_duration = Vec::with_capacity(grid.len());
        for &w in &grid {
            match windows.get(&w) {
                Some(t) => {
                    let n = t.attempts as f64;
                    attempts.push(Point::new(w, Some(n)));
                    drop_rate.push(Point::new(w, Some(t.dropped as f64 / n)));
                    mean_duration.push(Point::new(w, Some(t.total_duration as f64 / n)));
                }
                None => {
                    attempts.push(Point::new(w, Some(0.0)));
                    drop_rate.push(Point::new(w, None));
                    mean_duration.push(Point::new(w, None));
                }
            }
        }
        let mk = |name: &str, polarity, points| {
            MetricSeries::new(cell, name, MetricKind::Kqi, polarity, window_len).with_points(points)
        };
        // Alphabetical by metric name.
        out.push(mk(CALL_ATTEMPTS, Polarity::LowerIsWorse, attempts));
        out.push(mk(DROP_RATE, Polarity::HigherIsWorse, drop_rate));
        out.push(mk(MEAN_DURATION, Polarity::LowerIsWorse, mean_duration));
    }
    out
}

/// Catalog entries for the three CDR-derived KQIs.
pub fn cdr_catalog_entries(window_len: i64) -> [(String, CatalogEntry); 3] {
    let entry = |polarity| CatalogEntry {
        kind: MetricKind::Kqi,
        polarity,
        window_len_seconds: window_len,
        range: None,
    };
    [
        (CALL_ATTEMPTS.to_string(), entry(Polarity::LowerIsWorse)),
        (DROP_RATE.to_string(), entry(Polarity::HigherIsWorse)),
        (MEAN_DURATION.to_string(), entry(Polarity::LowerIsWorse)),
    ]
}

/// Distinct cell ids across a set of series, sorted.
pub fn cells_of<'a>(series: impl IntoIterator<Item = &'a MetricSeries>) -> BTreeSet<String> {
    series.into_iter().map(|s| s.cell_id.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> MetricCatalog {
        let mut c = MetricCatalog::default();
        c.insert(
            "rtt",
            CatalogEntry {
                kind: MetricKind::Kpi,
                polarity: Polarity::HigherIsWorse,
                window_len_seconds: 300,
                range: None,
            },
        );
        c
    }

    fn rec(cell: &str, t: i64, d: u64, dropped: bool) -> CdrRecord {
        CdrRecord {
            cell_id: cell.into(),
            start_time: t,
            duration: d,
            dropped,
            source_hash: "hsrc".into(),
            dest_hash: "hdst".into(),
        }
    }

    #[test]
    fn cdr_header_only_is_empty() {
        let text = "cell_id,start_time,duration,dropped,source_hash,dest_hash\n";
        assert!(read_cdr(text.as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn cdr_single_row() {
        let text = "cell_id,start_time,duration,dropped,source_hash,dest_hash\nc1,1000,30,0,h1,h2\n";
        let recs = read_cdr(text.as_bytes()).unwrap();
        assert_eq!(
            recs,
            vec![CdrRecord {
                cell_id: "c1".into(),
                start_time: 1000,
                duration: 30,
                dropped: false,
                source_hash: "h1".into(),
                dest_hash: "h2".into(),
            }]
        );
    }

    #[test]
    fn cdr_negative_duration_reports_line() {
        let text = "cell_id,start_time,duration,dropped,source_hash,dest_hash\nc1,1000,-5,0,h1,h2\n";
        match read_cdr(text.as_bytes()) {
            Err(IngestError::MalformedRows(rows)) => {
                assert_eq!(rows.len(), 1);
                assert_eq!(rows[0].line, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cdr_collects_every_bad_row() {
        let text = "cell_id,start_time,duration,dropped,source_hash,dest_hash\n\
                    c1,1000,x,0,h1,h2\nc1,1000,3,0,h1,h2\nc1,1000,3,yes,h1,h2\nc1,1000,3,0,h1,h2,extra\n";
        match read_cdr(text.as_bytes()) {
            Err(IngestError::MalformedRows(rows)) => {
                assert_eq!(rows.iter().map(|r| r.line).collect::<Vec<_>>(), vec![2, 4, 5]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cdr_wrong_header() {
        let text = "cell,start_time,duration,dropped,source_hash,dest_hash\n";
        assert!(matches!(
            read_cdr(text.as_bytes()),
            Err(IngestError::MalformedHeader { .. })
        ));
        let text = "cell_id,start_time,duration,dropped,source_hash,dest_hash,bill\n";
        assert!(matches!(
            read_cdr(text.as_bytes()),
            Err(IngestError::MalformedHeader { .. })
        ));
    }

    #[test]
    fn metric_grid_fill() {
        let text = "cell_id,metric_name,window_start,value\nc1,rtt,600,2.5\nc1,rtt,0,1.5\n";
        let s = read_metric_csv(text.as_bytes(), MetricKind::Kpi, &catalog()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(
            s[0].points,
            vec![
                Point::new(0, Some(1.5)),
                Point::new(300, None),
                Point::new(600, Some(2.5))
            ]
        );
        assert!(s[0].is_on_grid());
    }

    #[test]
    fn metric_empty_value_is_missing() {
        let text = "cell_id,metric_name,window_start,value\nc1,rtt,0,\n";
        let s = read_metric_csv(text.as_bytes(), MetricKind::Kpi, &catalog()).unwrap();
        assert_eq!(s[0].points, vec![Point::new(0, None)]);
    }

    #[test]
    fn metric_duplicate_point() {
        let text = "cell_id,metric_name,window_start,value\nc1,rtt,0,1\nc1,rtt,0,2\n";
        match read_metric_csv(text.as_bytes(), MetricKind::Kpi, &catalog()) {
            Err(IngestError::DuplicatePoint(k)) => {
                assert_eq!(
                    (k.cell_id.as_str(), k.metric_name.as_str(), k.window_start),
                    ("c1", "rtt", 0)
                )
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn metric_unknown_and_kind_mismatch() {
        let text = "cell_id,metric_name,window_start,value\nc1,loss,0,1\n";
        assert!(matches!(
            read_metric_csv(text.as_bytes(), MetricKind::Kpi, &catalog()),
            Err(IngestError::UnknownMetric(m)) if m == "loss"
        ));
        let text = "cell_id,metric_name,window_start,value\nc1,rtt,0,1\n";
        assert!(matches!(
            read_metric_csv(text.as_bytes(), MetricKind::Kqi, &catalog()),
            Err(IngestError::KindMismatch { .. })
        ));
    }

    #[test]
    fn metric_off_grid_row() {
        let text = "cell_id,metric_name,window_start,value\nc1,rtt,17,1\n";
        assert!(matches!(
            read_metric_csv(text.as_bytes(), MetricKind::Kpi, &catalog()),
            Err(IngestError::MalformedRows(_))
        ));
    }

    #[test]
    fn aggregate_empty() {
        assert!(aggregate_cdr(&[], 300).is_empty());
    }

    #[test]
    fn aggregate_drop_rate_and_mean_duration() {
        let recs = vec![
            rec("c1", 0, 10, false),
            rec("c1", 100, 30, true),
            rec("c1", 299, 20, false),
        ];
        let out = aggregate_cdr(&recs, 300);
        let by_name: BTreeMap<_, _> = out.iter().map(|s| (s.metric_name.as_str(), s)).collect();
        // direct count: 1 dropped out of 3
        assert_eq!(by_name[DROP_RATE].points[0].value, Some(1.0 / 3.0));
        assert_eq!(by_name[CALL_ATTEMPTS].points[0].value, Some(3.0));
        assert_eq!(by_name[MEAN_DURATION].points[0].value, Some(20.0));

        let two = aggregate_cdr(&[rec("c1", 0, 10, false), rec("c1", 5, 30, false)], 300);
        assert_eq!(two[2].metric_name, MEAN_DURATION);
        assert_eq!(two[2].points[0].value, Some(20.0));
    }

    #[test]
    fn aggregate_fills_empty_windows() {
        let recs = vec![rec("c1", 0, 10, false), rec("c1", 900, 10, true)];
        let out = aggregate_cdr(&recs, 300);
        assert_eq!(out[0].points.len(), 4);
        assert_eq!(out[0].points[1], Point::new(300, Some(0.0)));
        assert_eq!(out[1].points[1], Point::new(300, None));
        assert_eq!(out[2].points[2], Point::new(600, None));
        assert!(out.iter().all(|s| s.is_on_grid()));
    }

    #[test]
    fn aggregate_negative_times_floor() {
        let out = aggregate_cdr(&[rec("c1", -1, 1, false)], 300);
        assert_eq!(out[0].points[0].window_start, -300);
    }

    #[test]
    fn catalog_json_shape() {
        let text =
            r#"{"rtt": {"kind": "KPI", "polarity": "HIGHER_IS_WORSE", "window_len_seconds": 300, "range": [0, 500]}}"#;
        let c: MetricCatalog = serde_json::from_str(text).unwrap();
        assert_eq!(c.metrics["rtt"].range, Some([0.0, 500.0]));
        c.validate().unwrap();
    }
}
