//! Turns raw window flags into anomaly events.
//!
//! Filters run in a fixed order: persistence, then merging of nearby
//! survivors, then a floor on the event's peak score.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baseline::{Direction, ScoredWindow};

#[derive(Debug, Error, PartialEq)]
#[error("invalid filter config: {0}")]
pub struct FilterConfigError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterConfig {
    pub persistence_m: usize,
    pub persistence_n: usize,
    /// Largest count of non-surviving windows that may separate two
    /// survivors of the same event.
    pub merge_gap: usize,
    pub min_peak_score: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            persistence_m: 2,
            persistence_n: 3,
            merge_gap: 2,
            min_peak_score: 6.0,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<(), FilterConfigError> {
        if self.persistence_m == 0 || self.persistence_m > self.persistence_n {
            return Err(FilterConfigError("need 1 <= m <= n".into()));
        }
        if !self.min_peak_score.is_finite() {
            return Err(FilterConfigError("min_peak_score must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalyEvent {
    pub cell_id: String,
    pub metric_name: String,
    pub start_window: i64,
    pub end_window: i64,
    pub peak_score: f64,
    pub peak_window: i64,
    pub direction: Direction,
}

impl AnomalyEvent {
    pub fn overlaps(&self, start: i64, end: i64) -> bool {
        self.start_window <= end && start <= self.end_window
    }
}

/// Persistence filter: a flagged window survives when some run of `n`
/// consecutive windows covering it holds at least `m` flags.
pub fn persistent_windows(flags: &[bool], m: usize, n: usize) -> Vec<bool> {
    let len = flags.len();
    // prefix[i] = flags among the first i windows
    let mut prefix = vec![0usize; len + 1];
    for (i, &f) in flags.iter().enumerate() {
        prefix[i + 1] = prefix[i] + usize::from(f);
    }
    let count_in = |start: isize| {
        let a = start.max(0) as usize;
        let b = ((start + n as isize).max(0) as usize).min(len);
        if b > a {
            prefix[b] - prefix[a]
        } else {
            0
        }
    };
    (0..len)
        .map(|i| flags[i] && (0..n).any(|back| count_in(i as isize - back as isize) >= m))
        .collect()
}

/// Applies the three filters to one (cell, metric) stream of scored windows.
/// Events come out in chronological order.
pub fn apply_filters(
    cell_id: &str,
    metric_name: &str,
    windows: &[ScoredWindow],
    cfg: &FilterConfig,
) -> Vec<AnomalyEvent> {
    let flags: Vec<bool> = windows.iter().map(|w| w.flagged).collect();
    let survives = persistent_windows(&flags, cfg.persistence_m, cfg.persistence_n);
    let survivors: Vec<usize> = (0..windows.len()).filter(|&i| survives[i]).collect();

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in survivors {
        match groups.last_mut() {
            Some(g) if i - g[g.len() - 1] - 1 <= cfg.merge_gap => g.push(i),
            _ => groups.push(vec![i]),
        }
    }

    groups
        .into_iter()
        .filter_map(|g| {
            // earliest window wins peak ties
            let peak = g.iter().copied().fold(g[0], |best, i| {
                if windows[i].score.score > windows[best].score.score {
                    i
                } else {
                    best
                }
            });
            let peak_score = windows[peak].score.score;
            (peak_score >= cfg.min_peak_score).then(|| AnomalyEvent {
                cell_id: cell_id.to_string(),
                metric_name: metric_name.to_string(),
                start_window: windows[g[0]].window_start,
                end_window: windows[g[g.len() - 1]].window_start,
                peak_score,
                peak_window: windows[peak].window_start,
                direction: windows[peak].score.direction,
            })
        })
        .collect()
}
