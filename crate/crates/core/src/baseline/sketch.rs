use serde::{Deserialize, Serialize};

use super::DetectError;

/// Fixed-bounds equal-width histogram with under/overflow counters.
///
/// Two sketches with equal bounds and bin count merge by adding counts, so
/// fitting on partitions and merging gives the same sketch as fitting on
/// the pooled values. The observed min/max ride along (they merge exactly
/// too) and clamp bin representatives, which keeps constant inputs exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramSketch {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

impl HistogramSketch {
    pub fn new(lo: f64, hi: f64, bin_count: usize) -> Self {
        assert!(lo < hi, "sketch bounds must satisfy lo < hi");
        assert!(bin_count > 0);
        HistogramSketch {
            lo,
            hi,
            counts: vec![0; bin_count],
            underflow: 0,
            overflow: 0,
            min: None,
            max: None,
        }
    }

    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.bin_count() as f64
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    pub fn insert(&mut self, x: f64) {
        debug_assert!(x.is_finite());
        self.min = Some(self.min.map_or(x, |m| m.min(x)));
        self.max = Some(self.max.map_or(x, |m| m.max(x)));
        if x < self.lo {
            self.underflow += 1;
        } else if x > self.hi {
            self.overflow += 1;
        } else {
            let idx = ((x - self.lo) / self.bin_width()).floor() as usize;
            let idx = idx.min(self.bin_count() - 1);
            self.counts[idx] += 1;
        }
    }

    pub fn is_compatible(&self, other: &HistogramSketch) -> bool {
        self.lo == other.lo && self.hi == other.hi && self.bin_count() == other.bin_count()
    }

    pub fn merge(&mut self, other: &HistogramSketch) -> Result<(), DetectError> {
        if !self.is_compatible(other) {
            return Err(DetectError::IncompatibleSketch(format!(
                "[{}, {}]x{} vs [{}, {}]x{}",
                self.lo,
                self.hi,
                self.bin_count(),
                other.lo,
                other.hi,
                other.bin_count()
            )));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.underflow += other.underflow;
        self.overflow += other.overflow;
        self.min = opt_fold(self.min, other.min, f64::min);
        self.max = opt_fold(self.max, other.max, f64::max);
        Ok(())
    }

    /// (representative value, count) per occupied cell, in value order.
    /// Bins stand at their midpoint, clamped into the observed [min, max].
    fn cells(&self) -> Vec<(f64, u64)> {
        let (Some(min), Some(max)) = (self.min, self.max) else {
            return Vec::new();
        };
        let w = self.bin_width();
        let mut out = Vec::with_capacity(self.bin_count() + 2);
        if self.underflow > 0 {
            out.push((self.lo.clamp(min, max), self.underflow));
        }
        for (i, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                let mid = self.lo + (i as f64 + 0.5) * w;
                out.push((mid.clamp(min, max), c));
            }
        }
        if self.overflow > 0 {
            out.push((self.hi.clamp(min, max), self.overflow));
        }
        out
    }

    /// Histogram estimate of the median.
    pub fn median(&self) -> Option<f64> {
        weighted_median(&self.cells())
    }

    /// Histogram estimate of the median absolute deviation around `center`.
    pub fn mad(&self, center: f64) -> Option<f64> {
        let mut dev: Vec<(f64, u64)> = self.cells().into_iter().map(|(v, c)| ((v - center).abs(), c)).collect();
        dev.sort_by(|a, b| a.0.total_cmp(&b.0));
        weighted_median(&dev)
    }
}

fn opt_fold(a: Option<f64>, b: Option<f64>, f: fn(f64, f64) -> f64) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(f(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Median of a run-length encoded sorted sample; averages the two middle
/// order statistics for even totals.
fn weighted_median(cells: &[(f64, u64)]) -> Option<f64> {
    let n: u64 = cells.iter().map(|c| c.1).sum();
    if n == 0 {
        return None;
    }
    let order_stat = |k: u64| {
        let mut seen = 0;
        for &(v, c) in cells {
            seen += c;
            if k < seen {
                return v;
            }
        }
        unreachable!("k < n")
    };
    if n % 2 == 1 {
        Some(order_stat(n / 2))
    } else {
        Some((order_stat(n / 2 - 1) + order_stat(n / 2)) / 2.0)
    }
}
