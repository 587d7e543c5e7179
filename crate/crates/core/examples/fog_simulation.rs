//! Simulates the three deployment strategies on a small scenario and prints
//! the byte and latency comparison.

use fogdna::fogsim::{self, format_comparison, DeploymentStrategy, FogScenario, FogTopology};
use fogdna::pipeline::Dataset;
use fogdna::synth::{self, ScenarioSpec};

fn main() -> Result<(), fogdna::Error> {
    let mut spec = ScenarioSpec {
        n_cells: 20,
        days: 7,
        ..Default::default()
    };
    spec.anomalies = spec.spread_anomalies(8, &["web_delay", "dl_throughput"], 6, 8.0);
    let seed = 3;
    let generated = synth::generate(&spec, seed)?;
    let truth = generated.truth.clone();
    let dataset = Dataset::from(generated);
    let cfg = synth::planted_run_config(seed);
    let topo = FogTopology::default_for(&dataset.cells());
    let sc = FogScenario {
        dataset: &dataset,
        config: &cfg,
        truth: Some(&truth),
    };

    let mut outputs = Vec::new();
    for s in DeploymentStrategy::ALL {
        outputs.push(fogsim::simulate(&topo, s, sc)?);
    }
    print!(
        "{}",
        format_comparison(&outputs.iter().map(|o| o.report.clone()).collect::<Vec<_>>())
    );

    let (central, fog) = (&outputs[0], &outputs[2]);
    println!(
        "\nFOG model and db identical to CENTRALIZED: {} / {}",
        fogsim::compare_models(&central.model, &fog.model),
        fogsim::compare_dbs(&central.db, &fog.db)
    );
    Ok(())
}
