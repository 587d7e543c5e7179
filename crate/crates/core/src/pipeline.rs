//! Wiring of the stages over one dataset: split and clean, fit, detect,
//! build transactions, mine and diagnose.
//!
//! Every stage is a pure function of its inputs, so running a stage on a
//! subset of cells and merging gives the pooled answer wherever the
//! underlying operation merges exactly.

use std::collections::BTreeSet;
use std::path::Path;

use crate::baseline::{fit_baseline, score_series, BaselineConfig, BaselineModel, DetectError};
use crate::cleaning::{chrono_split, clean, CleanError, CleanReport};
use crate::config::RunConfig;
use crate::fingerprint::{build_transactions, mine_rare_rules, FingerprintDb, LabelMap, Transaction};
use crate::ingest::{self, aggregate_cdr, CdrRecord, MetricCatalog, MetricKind, MetricSeries};
use crate::postfilter::{apply_filters, AnomalyEvent};
use crate::rca::{diagnose, DiagnosedEvent, EventRef, SymptomSet};
use crate::synth::{GeneratedScenario, CATALOG_FILE, CDR_FILE, KPI_FILE, KQI_FILE};
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub catalog: MetricCatalog,
    pub cdr: Vec<CdrRecord>,
    pub kqi: Vec<MetricSeries>,
    pub kpi: Vec<MetricSeries>,
}

impl From<GeneratedScenario> for Dataset {
    fn from(g: GeneratedScenario) -> Self {
        Dataset {
            catalog: g.catalog,
            cdr: g.cdr,
            kqi: g.kqi,
            kpi: g.kpi,
        }
    }
}

impl Dataset {
    /// Reads `catalog.json`, `cdr.csv`, `kqi.csv` and `kpi.csv` from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self, Error> {
        if !dir.is_dir() {
            return Err(Error::io(
                dir,
                std::io::Error::new(std::io::ErrorKind::NotFound, "not a dataset directory"),
            ));
        }
        let catalog = MetricCatalog::load(&dir.join(CATALOG_FILE))?;
        let cdr = ingest::parse_cdr(&dir.join(CDR_FILE))?;
        let kqi = ingest::parse_metric_csv(&dir.join(KQI_FILE), MetricKind::Kqi, &catalog)?;
        let kpi = ingest::parse_metric_csv(&dir.join(KPI_FILE), MetricKind::Kpi, &catalog)?;
        Ok(Dataset { catalog, cdr, kqi, kpi })
    }

    pub fn cells(&self) -> BTreeSet<String> {
        let mut cells = ingest::cells_of(self.kqi.iter().chain(&self.kpi));
        cells.extend(self.cdr.iter().map(|r| r.cell_id.clone()));
        cells
    }

    pub fn restrict(&self, cells: &BTreeSet<String>) -> Dataset {
        Dataset {
            catalog: self.catalog.clone(),
            cdr: self
                .cdr
                .iter()
                .filter(|r| cells.contains(&r.cell_id))
                .cloned()
                .collect(),
            kqi: self
                .kqi
                .iter()
                .filter(|s| cells.contains(&s.cell_id))
                .cloned()
                .collect(),
            kpi: self
                .kpi
                .iter()
                .filter(|s| cells.contains(&s.cell_id))
                .cloned()
                .collect(),
        }
    }

    /// Window length of the CDR aggregates, from the catalog.
    pub fn cdr_window_len(&self) -> Result<i64, Error> {
        self.catalog
            .get(ingest::CALL_ATTEMPTS)
            .map(|e| e.window_len_seconds)
            .ok_or_else(|| Error::Domain(format!("catalog lacks `{}` needed for CDR data", ingest::CALL_ATTEMPTS)))
    }

    /// CDR aggregates followed by the KQI and KPI series.
    pub fn all_series(&self) -> Result<Vec<MetricSeries>, Error> {
        let mut out = if self.cdr.is_empty() {
            Vec::new()
        } else {
            aggregate_cdr(&self.cdr, self.cdr_window_len()?)
        };
        out.extend(self.kqi.iter().cloned());
        out.extend(self.kpi.iter().cloned());
        Ok(out)
    }

    /// Latest window start present anywhere in the data; 0 when empty.
    pub fn last_window(&self) -> i64 {
        let series = self
            .kqi
            .iter()
            .chain(&self.kpi)
            .filter_map(|s| s.points.last())
            .map(|p| p.window_start);
        let cdr = self
            .cdr_window_len()
            .ok()
            .and_then(|w| self.cdr.iter().map(|r| r.start_time.div_euclid(w) * w).max());
        series.chain(cdr).max().unwrap_or(0)
    }
}

/// Baseline settings with sketch bounds taken from declared catalog ranges.
pub fn baseline_config(cfg: &RunConfig, catalog: &MetricCatalog) -> BaselineConfig {
    let mut b = cfg.baseline();
    for (name, entry) in &catalog.metrics {
        if let Some(r) = entry.range {
            b.fixed_bounds.insert(name.clone(), r);
        }
    }
    b
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Prepared {
    /// Cleaned training parts.
    pub train: Vec<MetricSeries>,
    /// Uncleaned test parts of every series that split.
    pub test: Vec<MetricSeries>,
    pub report: CleanReport,
    /// Series dropped for having too few points.
    pub skipped: Vec<CleanError>,
}

/// Splits each series chronologically, then cleans only its training part.
pub fn prepare(series: &[MetricSeries], cfg: &RunConfig) -> Result<Prepared, Error> {
    cfg.clean.validate()?;
    let mut out = Prepared::default();
    for s in series {
        let (train, test) = match chrono_split(s, cfg.train_fraction) {
            Ok(parts) => parts,
            Err(e @ CleanError::TooFewPoints { .. }) => {
                log::warn!("{e}");
                out.skipped.push(e);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        match clean(&train, &cfg.clean) {
            Ok((cleaned, report)) => {
                out.train.push(cleaned);
                out.report.absorb(report);
            }
            Err(e @ CleanError::TooFewPoints { .. }) => {
                log::warn!("{e}");
                out.skipped.push(e);
            }
            Err(e) => return Err(e.into()),
        }
        out.test.push(test);
    }
    Ok(out)
}

/// Fits the model over the cleaned training parts. With nothing left to
/// train on, the first skip reason is the error.
pub fn fit(prepared: &Prepared, bcfg: &BaselineConfig) -> Result<BaselineModel, Error> {
    if prepared.train.is_empty() {
        return Err(match prepared.skipped.first() {
            Some(e) => e.clone().into(),
            None => DetectError::EmptyTraining.into(),
        });
    }
    Ok(fit_baseline(&prepared.train, bcfg)?)
}

pub fn train(dataset: &Dataset, cfg: &RunConfig) -> Result<(BaselineModel, CleanReport), Error> {
    let prepared = prepare(&dataset.all_series()?, cfg)?;
    let model = fit(&prepared, &baseline_config(cfg, &dataset.catalog))?;
    Ok((model, prepared.report))
}

/// Scores and filters every KQI series. Series without a baseline for some
/// hour are skipped with a warning.
pub fn detect(model: &BaselineModel, test: &[MetricSeries], cfg: &RunConfig) -> Result<Vec<AnomalyEvent>, Error> {
    cfg.filter.validate()?;
    let mut events = Vec::new();
    for s in test.iter().filter(|s| s.kind == MetricKind::Kqi) {
        match score_series(model, s, cfg.detector.tau) {
            Ok(scored) => events.extend(apply_filters(&s.cell_id, &s.metric_name, &scored, &cfg.filter)),
            Err(e @ DetectError::UnknownKey(_)) => log::warn!("skipping {}/{}: {e}", s.cell_id, s.metric_name),
            Err(e) => return Err(e.into()),
        }
    }
    sort_events(&mut events);
    Ok(events)
}

pub fn sort_events(events: &mut [AnomalyEvent]) {
    events.sort_by(|a, b| {
        (&a.cell_id, &a.metric_name, a.start_window).cmp(&(&b.cell_id, &b.metric_name, b.start_window))
    });
}

/// Test parts of the dataset's series, for detection with an existing model.
pub fn test_series(dataset: &Dataset, cfg: &RunConfig) -> Result<Vec<MetricSeries>, Error> {
    Ok(prepare(&dataset.all_series()?, cfg)?.test)
}

pub fn mine_db(
    transactions: &[Transaction],
    previous: &FingerprintDb,
    labels: impl FnOnce(&[crate::fingerprint::Fingerprint]) -> LabelMap,
    built_at: i64,
    cfg: &RunConfig,
) -> Result<FingerprintDb, Error> {
    cfg.mine.validate()?;
    let rules = mine_rare_rules(transactions, &cfg.mine);
    let labels = labels(&rules);
    Ok(previous.update(&rules, transactions.len() as u64, &labels, built_at))
}

/// Symptoms at each event's peak, ranked against the db.
pub fn diagnose_events(
    events: &[AnomalyEvent],
    kpi: &[MetricSeries],
    model: &BaselineModel,
    db: &FingerprintDb,
    cfg: &RunConfig,
) -> Vec<DiagnosedEvent> {
    let transactions = build_transactions(events, kpi, model, cfg.z_symptom);
    events
        .iter()
        .zip(transactions)
        .map(|(e, t)| {
            let set = SymptomSet {
                items: t.items,
                consequent: e.metric_name.clone(),
                event_ref: EventRef::from(e),
            };
            DiagnosedEvent {
                event: e.clone(),
                symptoms: set.items.iter().cloned().collect(),
                diagnosis: diagnose(db, &set, cfg.rca.k, cfg.rca.match_threshold),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub model: BaselineModel,
    pub clean_report: CleanReport,
    pub events: Vec<AnomalyEvent>,
    pub transactions: Vec<Transaction>,
    pub db: FingerprintDb,
    pub diagnoses: Vec<DiagnosedEvent>,
}

/// Train, detect, mine into a fresh db and diagnose, all centrally.
pub fn run(
    dataset: &Dataset,
    cfg: &RunConfig,
    labels: impl FnOnce(&[crate::fingerprint::Fingerprint]) -> LabelMap,
) -> Result<PipelineOutput, Error> {
    cfg.validate()?;
    let prepared = prepare(&dataset.all_series()?, cfg)?;
    let model = fit(&prepared, &baseline_config(cfg, &dataset.catalog))?;
    let events = detect(&model, &prepared.test, cfg)?;
    let transactions = build_transactions(&events, &dataset.kpi, &model, cfg.z_symptom);
    let db = mine_db(
        &transactions,
        &FingerprintDb::empty(),
        labels,
        dataset.last_window(),
        cfg,
    )?;
    let diagnoses = diagnose_events(&events, &dataset.kpi, &model, &db, cfg);
    Ok(PipelineOutput {
        model,
        clean_report: prepared.report,
        events,
        transactions,
        db,
        diagnoses,
    })
}
