use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Averages of `window` consecutive values starting every `stride` values.
///
/// A `2^w`-tick series with window and stride 128 yields `2^(w-7)` averages.
pub fn moving_average(xs: &[f64], window: usize, stride: usize) -> Result<Vec<f64>> {
    if window < 1 {
        return Err(Error::NonPositive { what: "moving-average window" });
    }
    if stride < 1 {
        return Err(Error::NonPositive { what: "moving-average stride" });
    }
    if xs.len() < window {
        return Err(Error::SeriesTooShort {
            len: xs.len(),
            window,
        });
    }
    Ok((0..=xs.len() - window)
        .step_by(stride)
        .map(|start| xs[start..start + window].iter().sum::<f64>() / window as f64)
        .collect())
}

/// Equal-width bins over `[min, max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// `bins + 1` strictly increasing edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts divided by the total.
    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.total() as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }
}

/// Bins `values` into `bins` equal-width bins; the maximum lands in the last bin.
///
/// When every value is equal the range falls back to `[min, min + 1]`.
pub fn histogram(values: &[f64], bins: usize) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bins < 1 {
        return Err(Error::NonPositive { what: "bin count" });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidRange("histogram values must be finite"));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        hi = lo + 1.0;
    }
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..bins).map(|i| lo + i as f64 * width).collect();
    edges.push(hi);
    let mut counts = alloc::vec![0u64; bins];
    for &v in values {
        let idx = (((v - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(Histogram { edges, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ma_counts() {
        let xs = alloc::vec![1.0; 1 << 14];
        let ma = moving_average(&xs, 128, 128).unwrap();
        assert_eq!(ma.len(), 128);
        assert!(ma.iter().all(|&v| v == 1.0));
        assert_eq!(moving_average(&[1.0, 2.0, 3.0, 4.0], 2, 1).unwrap(), [1.5, 2.5, 3.5]);
        assert_eq!(moving_average(&[1.0, 2.0, 3.0, 4.0, 5.0], 2, 2).unwrap(), [1.5, 3.5]);
        assert!(moving_average(&[1.0], 2, 1).is_err());
        assert!(moving_average(&[1.0], 0, 1).is_err());
        assert!(moving_average(&[1.0], 1, 0).is_err());
    }

    #[test]
    fn degenerate_range() {
        let h = histogram(&[1.0; 100], 100).unwrap();
        assert_eq!(h.counts[0], 100);
        assert_eq!(h.counts.iter().filter(|&&c| c > 0).count(), 1);
        assert!(h.edges.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn uniform_grid() {
        let xs: Vec<f64> = (0..100).map(f64::from).collect();
        let h = histogram(&xs, 100).unwrap();
        assert_eq!(h.edges.len(), 101);
        assert!(h.counts.iter().all(|&c| c == 1), "{:?}", h.counts);
        assert!((h.frequencies().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(histogram(&[], 10), Err(Error::EmptyInput));
        assert!(histogram(&[1.0, f64::NAN], 10).is_err());
        assert!(histogram(&[1.0], 0).is_err());
    }
}
