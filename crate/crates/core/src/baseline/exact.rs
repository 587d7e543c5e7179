//! Reference robust scorer computed from raw values.
//!
//! Used to check the histogram estimates and to self-check generated data.

use super::{Direction, MAD_CONSISTENCY, SCALE_EPSILON};

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactBaseline {
    pub median: f64,
    pub mad: f64,
}

impl ExactBaseline {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        let m = median(values)?;
        let dev: Vec<f64> = values.iter().map(|v| (v - m).abs()).collect();
        Some(ExactBaseline {
            median: m,
            mad: median(&dev)?,
        })
    }

    pub fn score(&self, value: f64) -> f64 {
        (value - self.median).abs() / (MAD_CONSISTENCY * self.mad + SCALE_EPSILON)
    }

    pub fn direction(&self, value: f64) -> Direction {
        Direction::of(value, self.median)
    }
}
