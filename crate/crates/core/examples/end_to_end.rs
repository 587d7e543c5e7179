//! Generates the default scenario, runs the full pipeline centrally and
//! scores it against the planted ground truth.

use fogdna::pipeline::{self, Dataset};
use fogdna::synth::{self, ScenarioSpec};

fn main() -> Result<(), fogdna::Error> {
    let spec = ScenarioSpec::default();
    let seed = 7;
    let generated = synth::generate(&spec, seed)?;
    let truth = generated.truth.clone();
    let dataset = Dataset::from(generated);
    let cfg = synth::planted_run_config(seed);

    let out = pipeline::run(&dataset, &cfg, |rules| truth.labels_for(rules))?;
    let report = synth::evaluate(&out.events, &out.diagnoses, &truth);

    println!("cells {}  baseline keys {}", dataset.cells().len(), out.model.len());
    println!(
        "events {}  planted {}  precision {:.3}  recall {:.3}",
        report.detected, report.planted, report.precision, report.recall
    );
    println!(
        "rca top-1 {:.3} over {} matched diagnoses",
        report.rca_top1_accuracy, report.rca_evaluated
    );
    println!("\nfingerprints:");
    for r in &out.db.rules {
        let ante: Vec<String> = r.antecedent.iter().map(|i| i.to_string()).collect();
        println!(
            "  {{{}}} -> {}  conf {:.2}  lift {:.2}  n {}  {}",
            ante.join(", "),
            r.consequent,
            r.confidence,
            r.lift,
            r.support_count,
            r.cause_label.as_deref().unwrap_or("-")
        );
    }
    println!("\nevents:");
    for d in &out.diagnoses {
        let e = &d.event;
        let items: Vec<String> = d.symptoms.iter().map(|i| i.to_string()).collect();
        println!(
            "  {} {} [{}..{}] peak {:.1}  symptoms [{}]  -> {}",
            e.cell_id,
            e.metric_name,
            e.start_window,
            e.end_window,
            e.peak_score,
            items.join(", "),
            if d.diagnosis.matched {
                d.diagnosis.top_label().unwrap_or("(unlabeled)")
            } else {
                "(no match)"
            }
        );
    }
    Ok(())
}
