//! Command-line front end. Diagnostics go to stderr; artifacts go to the
//! `--out` path or, when it is absent, to stdout.
//!
//! Exit status is 0 on success, 1 on domain errors and 2 on usage or I/O
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::baseline::BaselineModel;
use crate::config::RunConfig;
use crate::fingerprint::{self, labels_from_entries, FingerprintDb, LabelEntry, LabelMap};
use crate::fogsim::{self, build_topology, DeploymentStrategy, FogScenario, FogTopology, TopologySpec};
use crate::pipeline::{self, Dataset};
use crate::postfilter::AnomalyEvent;
use crate::rca::DiagnosedEvent;
use crate::synth::{self, EvalReport, GroundTruth, ScenarioSpec};
use crate::Error;

pub const CONFIG_FILE: &str = "config.json";
pub const TOPOLOGY_FILE: &str = "topology.json";
pub const SCENARIO_FILE: &str = "scenario.json";

#[derive(Debug, Parser)]
#[command(
    name = "fogdna",
    version,
    about = "Telemetry anomaly detection and root-cause fingerprints"
)]
struct Cli {
    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

/// Config file and flag overrides shared by pipeline subcommands.
#[derive(Debug, Args, Default)]
struct ConfigArgs {
    /// Run config JSON; defaults to `config.json` in the input directory
    /// when present.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    min_samples: Option<u64>,
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    train_fraction: Option<f64>,
    #[arg(long)]
    z_symptom: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    match_threshold: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic scenario directory.
    Gen {
        /// Scenario spec JSON; the built-in default when absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Drop every planted anomaly.
        #[arg(long)]
        no_anomalies: bool,
    },
    /// Split, clean and fit the baseline model.
    Train {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Score the test span and write events as JSON Lines.
    Detect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Mine fingerprints from events and fold them into a db.
    Mine {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        events: PathBuf,
        /// Existing db to update.
        #[arg(long)]
        db: Option<PathBuf>,
        /// Label rules from a scenario's ground truth.
        #[arg(long)]
        truth: Option<PathBuf>,
        /// Label rules from a JSON list of {antecedent, consequent, cause_label}.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Rank causes for each event and write diagnoses as JSON Lines.
    Diagnose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        events: PathBuf,
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Simulate a deployment strategy and report bytes and latency.
    Fogsim {
        #[arg(long = "in")]
        input: PathBuf,
        /// Topology JSON; `topology.json` in the input directory, else the
        /// built-in default.
        #[arg(long)]
        topology: Option<PathBuf>,
        #[arg(long, default_value = "fog")]
        strategy: DeploymentStrategy,
        /// Run all strategies and print a comparison table.
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Score events and diagnoses against ground truth.
    Eval {
        #[arg(long)]
        events: PathBuf,
        #[arg(long)]
        diagnoses: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a readable summary of any artifact.
    Report { path: PathBuf },
}

/// Parses `argv`, runs the subcommand and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .try_init();
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn resolve_config(args: &ConfigArgs, input: Option<&Path>) -> Result<RunConfig, Error> {
    let implicit = input.map(|d| d.join(CONFIG_FILE)).filter(|p| p.is_file());
    let mut cfg = match args.config.as_deref().map(Path::to_path_buf).or(implicit) {
        Some(p) => RunConfig::load(&p)?,
        None => RunConfig::default(),
    };
    if let Some(v) = args.tau {
        cfg.detector.tau = v;
    }
    if let Some(v) = args.min_samples {
        cfg.detector.min_samples = v;
    }
    if let Some(v) = args.bins {
        cfg.detector.bin_count = v;
    }
    if let Some(v) = args.train_fraction {
        cfg.train_fraction = v;
    }
    if let Some(v) = args.z_symptom {
        cfg.z_symptom = v;
    }
    if let Some(v) = args.k {
        cfg.rca.k = v;
    }
    if let Some(v) = args.match_threshold {
        cfg.rca.match_threshold = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            }
            fs::write(p, text).map_err(|e| Error::io(p, e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                // a closed reader (`| head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|e| Error::io(Path::new("<stdout>"), e)),
            }
        }
    }
}

/// One compact JSON document per line.
pub fn to_jsonl<T: Serialize>(items: &[T]) -> String {
    let mut s = String::new();
    for it in items {
        s.push_str(&serde_json::to_string(it).expect("record serializes"));
        s.push('\n');
    }
    s
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, Error> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Domain(format!("{}:{}: {e}", path.display(), i + 1)))?);
    }
    Ok(out)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))
}

fn load_topology(explicit: Option<&Path>, input: &Path, cfg: &RunConfig, d: &Dataset) -> Result<FogTopology, Error> {
    let implicit = input.join(TOPOLOGY_FILE);
    let path = explicit
        .map(Path::to_path_buf)
        .or_else(|| cfg.topology.clone())
        .or_else(|| implicit.is_file().then_some(implicit));
    match path {
        Some(p) => Ok(build_topology(&TopologySpec::load(&p)?)?),
        None => Ok(FogTopology::default_for(&d.cells())),
    }
}

fn execute(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Gen {
            spec,
            seed,
            out,
            no_anomalies,
        } => {
            let mut spec: ScenarioSpec = match spec {
                Some(p) => read_json(&p).map_err(|e| Error::Usage(e.to_string()))?,
                None => ScenarioSpec::default(),
            };
            if no_anomalies {
                spec = spec.without_anomalies();
            }
            let g = synth::generate(&spec, seed)?;
            g.write_dir(&out)?;
            let cells = g.truth.planted_events.len();
            let topo = FogTopology::default_for(&Dataset::from(g).cells());
            emit(Some(&out.join(TOPOLOGY_FILE)), &topo.to_spec().to_json())?;
            emit(Some(&out.join(CONFIG_FILE)), &synth::planted_run_config(seed).to_json())?;
            let mut s = serde_json::to_string_pretty(&spec).expect("spec serializes");
            s.push('\n');
            emit(Some(&out.join(SCENARIO_FILE)), &s)?;
            log::info!("wrote scenario with {cells} planted events to {}", out.display());
            Ok(())
        }
        Command::Train { input, out, cfg } => {
            let cfg = resolve_config(&cfg, Some(&input))?;
            let d = Dataset::load_dir(&input)?;
            let (model, report) = pipeline::train(&d, &cfg)?;
            log::info!(
                "trained {} keys; removed {} missing and {} extreme points",
                model.len(),
                report.missing_removed,
                report.extremes_removed
            );
            emit(out.as_deref(), &model.to_json())
        }
        Command::Detect { input, model, out, cfg } => {
            let cfg = resolve_config(&cfg, Some(&input))?;
            let d = Dataset::load_dir(&input)?;
            let model = BaselineModel::load(&model)?;
            let test = pipeline::test_series(&d, &cfg)?;
            let events = pipeline::detect(&model, &test, &cfg)?;
            log::info!("{} events", events.len());
            emit(out.as_deref(), &to_jsonl(&events))
        }
        Command::Mine {
            input,
            model,
            events,
            db,
            truth,
            labels,
            out,
            cfg,
        } => {
            let cfg = resolve_config(&cfg, Some(&input))?;
            let d = Dataset::load_dir(&input)?;
            let model = BaselineModel::load(&model)?;
            let events: Vec<AnomalyEvent> = read_jsonl(&events)?;
            let previous = match db {
                Some(p) => FingerprintDb::load(&p)?,
                None => FingerprintDb::empty(),
            };
            let truth = truth.map(|p| GroundTruth::load(&p)).transpose()?;
            let mut explicit = LabelMap::new();
            if let Some(p) = labels {
                explicit = labels_from_entries(read_json::<Vec<LabelEntry>>(&p)?);
            }
            let tx = fingerprint::build_transactions(&events, &d.kpi, &model, cfg.z_symptom);
            let db = pipeline::mine_db(
                &tx,
                &previous,
                |rules| {
                    let mut l = truth.as_ref().map(|t| t.labels_for(rules)).unwrap_or_default();
                    l.extend(explicit);
                    l
                },
                d.last_window(),
                &cfg,
            )?;
            log::info!("{} transactions, {} rules", tx.len(), db.rules.len());
            emit(out.as_deref(), &db.to_json())
        }
        Command::Diagnose {
            input,
            model,
            events,
            db,
            out,
            cfg,
        } => {
            let cfg = resolve_config(&cfg, Some(&input))?;
            let d = Dataset::load_dir(&input)?;
            let model = BaselineModel::load(&model)?;
            let events: Vec<AnomalyEvent> = read_jsonl(&events)?;
            let db = FingerprintDb::load(&db)?;
            let diagnoses = pipeline::diagnose_events(&events, &d.kpi, &model, &db, &cfg);
            emit(out.as_deref(), &to_jsonl(&diagnoses))
        }
        Command::Fogsim {
            input,
            topology,
            strategy,
            compare,
            truth,
            out,
            cfg,
        } => {
            let cfg = resolve_config(&cfg, Some(&input))?;
            let d = Dataset::load_dir(&input)?;
            let topo = load_topology(topology.as_deref(), &input, &cfg, &d)?;
            let truth = truth.map(|p| GroundTruth::load(&p)).transpose()?;
            let sc = FogScenario {
                dataset: &d,
                config: &cfg,
                truth: truth.as_ref(),
            };
            if compare {
                let mut reports = Vec::new();
                let mut first: Option<fogsim::SimOutput> = None;
                for s in DeploymentStrategy::ALL {
                    let o = fogsim::simulate(&topo, s, sc)?;
                    if let Some(f) = &first {
                        if !fogsim::compare_models(&f.model, &o.model) || !fogsim::compare_dbs(&f.db, &o.db) {
                            return Err(Error::Domain(format!("{s} produced a different model or db")));
                        }
                    }
                    reports.push(o.report.clone());
                    first.get_or_insert(o);
                }
                if let Some(p) = &out {
                    let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
                    s.push('\n');
                    emit(Some(p), &s)?;
                }
                let table = fogsim::format_comparison(&reports);
                emit(
                    None,
                    &format!("{table}\nmodels and fingerprint dbs identical across strategies: yes\n"),
                )
            } else {
                let o = fogsim::simulate(&topo, strategy, sc)?;
                emit(out.as_deref(), &o.report.to_json())
            }
        }
        Command::Eval {
            events,
            diagnoses,
            truth,
            out,
        } => {
            let events: Vec<AnomalyEvent> = read_jsonl(&events)?;
            let diagnoses: Vec<DiagnosedEvent> = read_jsonl(&diagnoses)?;
            let truth = GroundTruth::load(&truth)?;
            let r = synth::evaluate(&events, &diagnoses, &truth);
            let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
            s.push('\n');
            emit(out.as_deref(), &s)
        }
        Command::Report { path } => {
            let text = summarize(&path)?;
            emit(None, &text)
        }
    }
}

/// Readable summary of a model, db, cost report, eval report, truth,
/// topology, config or JSON Lines stream.
pub fn summarize(path: &Path) -> Result<String, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path.display();
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(_) => return summarize_lines(path),
    };
    let has = |k: &str| value.get(k).is_some();
    let mut out = String::new();
    if has("keys") && has("schema_version") {
        let m = BaselineModel::from_json(&text)?;
        let cells: std::collections::BTreeSet<_> = m.sketches.keys().map(|k| &k.cell_id).collect();
        let metrics: std::collections::BTreeSet<_> = m.sketches.keys().map(|k| &k.metric_name).collect();
        let samples: u64 = m.sketches.values().map(|s| s.total()).sum();
        out += &format!("baseline model {name}\n");
        out += &format!(
            "  keys {}  cells {}  metrics {}  samples {}\n",
            m.len(),
            cells.len(),
            metrics.len(),
            samples
        );
        out += &format!(
            "  tau {}  min_samples {}  bins {}\n",
            m.config.tau, m.config.min_samples, m.config.bin_count
        );
    } else if has("rules") && has("transaction_total") {
        let db = FingerprintDb::from_json(&text)?;
        out += &format!("fingerprint db {name}\n");
        out += &format!(
            "  rules {}  transactions {}  built_at {}\n",
            db.rules.len(),
            db.transaction_total,
            db.built_at
        );
        for r in &db.rules {
            let ante: Vec<String> = r.antecedent.iter().map(|i| i.to_string()).collect();
            out += &format!(
                "  {{{}}} -> {}  conf {:.3}  lift {:.2}  n {}  label {}\n",
                ante.join(", "),
                r.consequent,
                r.confidence,
                r.lift,
                r.support_count,
                r.cause_label.as_deref().unwrap_or("-")
            );
        }
    } else if has("strategy") && has("total_bytes") {
        let r: fogsim::CostReport = read_json(path)?;
        out += &fogsim::format_comparison(&[r]);
    } else if value.is_array() && value.get(0).is_some_and(|v| v.get("strategy").is_some()) {
        let r: Vec<fogsim::CostReport> = read_json(path)?;
        out += &fogsim::format_comparison(&r);
    } else if has("precision") && has("recall") {
        let r: EvalReport = read_json(path)?;
        out += &format!("evaluation {name}\n");
        out += &format!("  detected {}  planted {}\n", r.detected, r.planted);
        out += &format!("  precision {:.3}  recall {:.3}\n", r.precision, r.recall);
        out += &format!(
            "  rca top-1 {:.3} ({} of {})\n",
            r.rca_top1_accuracy, r.rca_correct, r.rca_evaluated
        );
    } else if has("planted_events") {
        let t: GroundTruth = read_json(path)?;
        out += &format!(
            "ground truth {name}\n  planted events {}  planted rules {}\n",
            t.planted_events.len(),
            t.planted_rules.len()
        );
        for e in &t.planted_events {
            out += &format!(
                "  {} {} [{}, {}] {}\n",
                e.cell_id,
                e.kqi,
                e.start_window,
                e.end_window,
                e.cause_label.as_deref().unwrap_or("-")
            );
        }
    } else if has("nodes") && has("links") {
        let t = build_topology(&read_json::<TopologySpec>(path)?)?;
        out += &format!(
            "topology {name}\n  fogs {}  edges {}  cells {}\n",
            t.fogs.len(),
            t.edge_parent.len(),
            t.cells.len()
        );
    } else if has("detector") || has("mine") {
        let cfg = RunConfig::load(path)?;
        out += &format!("run config {name}\n{}", cfg.to_json());
    } else {
        return summarize_lines(path);
    }
    Ok(out)
}

fn summarize_lines(path: &Path) -> Result<String, Error> {
    if let Ok(d) = read_jsonl::<DiagnosedEvent>(path) {
        let matched = d.iter().filter(|x| x.diagnosis.matched).count();
        let mut out = format!(
            "diagnoses {}\n  events {}  matched {}\n",
            path.display(),
            d.len(),
            matched
        );
        for x in &d {
            out += &format!(
                "  {} {} @{}  -> {}\n",
                x.event.cell_id,
                x.event.metric_name,
                x.event.start_window,
                if x.diagnosis.matched {
                    x.diagnosis.top_label().unwrap_or("(unlabeled)")
                } else {
                    "(no match)"
                }
            );
        }
        return Ok(out);
    }
    if let Ok(ev) = read_jsonl::<AnomalyEvent>(path) {
        let mut out = format!("events {}\n  count {}\n", path.display(), ev.len());
        for e in &ev {
            out += &format!(
                "  {} {} [{}, {}] peak {:.2}\n",
                e.cell_id, e.metric_name, e.start_window, e.end_window, e.peak_score
            );
        }
        return Ok(out);
    }
    Err(Error::Domain(format!("{}: not a recognized artifact", path.display())))
}
