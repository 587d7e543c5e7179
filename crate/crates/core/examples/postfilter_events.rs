//! Runs the persistence, merge and peak-score filters over a hand-made
//! stream of scored windows.

use fogdna::baseline::{AnomalyScore, Direction, ScoredWindow};
use fogdna::postfilter::{apply_filters, persistent_windows, FilterConfig};

fn main() {
    let scores = [0.5, 7.0, 0.3, 0.2, 6.5, 8.0, 1.0, 9.0, 7.5, 0.4, 0.1, 5.5, 0.2, 0.0];
    let windows: Vec<ScoredWindow> = scores
        .iter()
        .enumerate()
        .map(|(i, &s)| ScoredWindow {
            window_start: i as i64 * 300,
            score: AnomalyScore {
                score: s,
                direction: Direction::Up,
                degrading: true,
                sufficient_data: true,
            },
            flagged: s >= 5.0,
        })
        .collect();
    let flags: Vec<bool> = windows.iter().map(|w| w.flagged).collect();
    let show = |v: &[bool]| v.iter().map(|&f| if f { '#' } else { '.' }).collect::<String>();

    let cfg = FilterConfig::default();
    println!("raw flags      {}", show(&flags));
    println!(
        "persistent 2/3 {}",
        show(&persistent_windows(&flags, cfg.persistence_m, cfg.persistence_n))
    );
    for e in apply_filters("cellA", "web_delay", &windows, &cfg) {
        println!(
            "event [{}..{}] peak {:.1} at {}",
            e.start_window, e.end_window, e.peak_score, e.peak_window
        );
    }
}
