use crate::error::{Error, Result};

/// Population central moments of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    /// Population variance, `m2`.
    pub variance: f64,
    /// `m3 / m2^1.5`
    pub skewness: f64,
    /// `m4 / m2^2 - 3`
    pub excess_kurtosis: f64,
}

impl Moments {
    /// Two passes: the mean first, then sums of centered powers.
    pub fn of(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let (mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0);
        for &x in xs {
            let d = x - mean;
            let d2 = d * d;
            s2 += d2;
            s3 += d2 * d;
            s4 += d2 * d2;
        }
        let (m2, m3, m4) = (s2 / n, s3 / n, s4 / n);
        if m2 <= 0.0 || !m2.is_finite() {
            return Err(Error::ZeroVariance);
        }
        Ok(Self {
            n: xs.len(),
            mean,
            variance: m2,
            skewness: m3 / (m2 * libm::sqrt(m2)),
            excess_kurtosis: m4 / (m2 * m2) - 3.0,
        })
    }
}

pub fn skewness(xs: &[f64]) -> Result<f64> {
    Moments::of(xs).map(|m| m.skewness)
}

pub fn excess_kurtosis(xs: &[f64]) -> Result<f64> {
    Moments::of(xs).map(|m| m.excess_kurtosis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn symmetric_two_point() {
        let xs: Vec<f64> = (0..1000).map(|i| if i % 2 == 0 { -1.0 } else { 1.0 }).collect();
        let m = Moments::of(&xs).unwrap();
        assert!(m.skewness.abs() < 1e-15);
        assert!((m.excess_kurtosis + 2.0).abs() < 1e-12);
    }

    #[test]
    fn scipy_reference_values() {
        // scipy.stats.skew / kurtosis (bias=True) of the same sample
        let xs = [2.0, 8.0, 0.0, 4.0, 1.0, 9.0, 9.0, 0.0];
        assert!((skewness(&xs).unwrap() - 0.2650554122698573).abs() < 1e-12);
        assert!((excess_kurtosis(&xs).unwrap() + 1.6660010752838508).abs() < 1e-12);
    }

    #[test]
    fn undefined_cases() {
        assert_eq!(Moments::of(&[]), Err(Error::EmptyInput));
        assert_eq!(Moments::of(&[3.0; 10]), Err(Error::ZeroVariance));
    }
}
