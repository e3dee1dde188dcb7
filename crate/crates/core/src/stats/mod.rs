//! Daily aggregation and distributional statistics of tick series.
//!
//! Moments are population (biased) moments. A "day" is a block of
//! consecutive, non-overlapping ticks, so `ticks_per_day × days` always
//! equals the series length.

mod baseline;
mod histogram;
mod moments;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

pub use baseline::random_walk_baseline;
pub use histogram::{histogram, moving_average, Histogram};
pub use moments::{excess_kurtosis, skewness, Moments};

use crate::automaton::RuleSpec;
use crate::dynamics::{generate_movements, HistoryWord, Series};
use crate::error::{Error, Result};

/// Sums consecutive blocks of `ticks_per_day` ticks.
///
/// A trailing partial day is an error unless `truncate` is set, in which case
/// it is dropped.
pub fn aggregate_days(ticks: &[i64], ticks_per_day: usize, truncate: bool) -> Result<Vec<i64>> {
    if ticks_per_day < 1 {
        return Err(Error::NonPositive { what: "ticks per day" });
    }
    if !truncate && !ticks.len().is_multiple_of(ticks_per_day) {
        return Err(Error::NotDivisible {
            len: ticks.len(),
            ticks_per_day,
        });
    }
    Ok(ticks
        .chunks_exact(ticks_per_day)
        .map(|day| day.iter().sum())
        .collect())
}

/// How standard errors of skewness and excess kurtosis are computed from `d` days.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StandardErrorForm {
    /// `6/d` and `24/d`.
    #[default]
    Literal,
    /// `sqrt(6/d)` and `sqrt(24/d)`.
    Conventional,
}

/// `(se_skew, se_kurt)` for `d` observations.
pub fn standard_errors(d: usize, form: StandardErrorForm) -> Result<(f64, f64)> {
    if d < 1 {
        return Err(Error::NonPositive { what: "day count" });
    }
    let d = d as f64;
    let (skew, kurt) = (6.0 / d, 24.0 / d);
    Ok(match form {
        StandardErrorForm::Literal => (skew, kurt),
        StandardErrorForm::Conventional => (libm::sqrt(skew), libm::sqrt(kurt)),
    })
}

/// Shape statistics of one aggregated series.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeriesStats {
    /// Number of observations `d`.
    pub n: usize,
    pub distinct: usize,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub se_skew: f64,
    pub se_kurt: f64,
}

impl SeriesStats {
    pub fn of(values: &[i64], form: StandardErrorForm) -> Result<Self> {
        let xs: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        let m = Moments::of(&xs)?;
        let (se_skew, se_kurt) = standard_errors(values.len(), form)?;
        Ok(Self {
            n: values.len(),
            distinct: values.iter().collect::<BTreeSet<_>>().len(),
            skewness: m.skewness,
            excess_kurtosis: m.excess_kurtosis,
            se_skew,
            se_kurt,
        })
    }
}

/// One row of a summary table.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SummaryRow {
    pub ticks_per_day: usize,
    pub stats: SeriesStats,
}

/// `32 · 2^i` for `i = 0..13`: 32 through 131,072 ticks per day.
pub fn default_day_lengths() -> Vec<usize> {
    (0..13).map(|i| 32usize << i).collect()
}

/// Default series length for summary tables, `2^22` ticks.
pub const DEFAULT_TOTAL_TICKS: usize = 1 << 22;

/// Statistics of the same tick series aggregated at each day length.
pub fn summarize_ticks(ticks: &[i64], day_lengths: &[usize], form: StandardErrorForm) -> Result<Vec<SummaryRow>> {
    day_lengths
        .iter()
        .map(|&len| {
            let days = aggregate_days(ticks, len, false)?;
            Ok(SummaryRow {
                ticks_per_day: len,
                stats: SeriesStats::of(&days, form)?,
            })
        })
        .collect()
}

/// Generates `total_ticks` of the rule's series from `init` and summarizes
/// it at every day length.
pub fn summary_table(
    spec: &RuleSpec,
    window: u32,
    total_ticks: usize,
    day_lengths: &[usize],
    init: &HistoryWord,
    form: StandardErrorForm,
) -> Result<Vec<SummaryRow>> {
    if total_ticks < 1 {
        return Err(Error::NonPositive { what: "tick count" });
    }
    if let Some(&bad) = day_lengths.iter().find(|&&l| l == 0 || !total_ticks.is_multiple_of(l)) {
        if bad == 0 {
            return Err(Error::NonPositive { what: "ticks per day" });
        }
        return Err(Error::NotDivisible {
            len: total_ticks,
            ticks_per_day: bad,
        });
    }
    let movements = generate_movements(spec, window, total_ticks, init)?;
    let series = Series::from_movements(movements, spec.symbols(), spec.base())?;
    summarize_ticks(&series.changes, day_lengths, form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn aggregation() {
        assert_eq!(aggregate_days(&[1, 1, -1, -1], 2, false), Ok(vec![2, -2]));
        assert!(matches!(aggregate_days(&[1, 1, -1], 2, false), Err(Error::NotDivisible { .. })));
        assert_eq!(aggregate_days(&[1, 1, -1], 2, true), Ok(vec![2]));
        assert!(aggregate_days(&[1], 0, true).is_err());
        let ticks = vec![1i64; 1 << 22];
        assert_eq!(aggregate_days(&ticks, 32, false).unwrap().len(), 131_072);
    }

    #[test]
    fn literal_standard_errors() {
        assert_eq!(standard_errors(32, StandardErrorForm::Literal), Ok((0.1875, 0.75)));
        assert_eq!(standard_errors(6, StandardErrorForm::Literal), Ok((1.0, 4.0)));
        let (s, k) = standard_errors(131_072, StandardErrorForm::Literal).unwrap();
        assert!((s - 0.0000458).abs() < 1e-7 && (k - 0.000183).abs() < 1e-6);
        assert_eq!(standard_errors(6, StandardErrorForm::Conventional), Ok((1.0, 2.0)));
        assert!(standard_errors(0, StandardErrorForm::Literal).is_err());
    }

    #[test]
    fn series_stats_counts_distinct() {
        let s = SeriesStats::of(&[1, -1, 1, 3, 3, -1], StandardErrorForm::Literal).unwrap();
        assert_eq!((s.n, s.distinct), (6, 3));
        assert_eq!((s.se_skew, s.se_kurt), (1.0, 4.0));
        assert_eq!(SeriesStats::of(&[2, 2], StandardErrorForm::Literal), Err(Error::ZeroVariance));
    }

    #[test]
    fn summary_table_checks_divisibility() {
        let spec = RuleSpec::binary(54).unwrap();
        let init = crate::dynamics::init_history(6, 2).unwrap();
        assert!(matches!(
            summary_table(&spec, 6, 100, &[32], &init, StandardErrorForm::Literal),
            Err(Error::NotDivisible { .. })
        ));
        assert!(summary_table(&spec, 6, 128, &[0], &init, StandardErrorForm::Literal).is_err());
        let rows = summary_table(&spec, 6, 1024, &[8, 16], &init, StandardErrorForm::Literal).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].stats.n, 128);
    }

    #[test]
    fn default_lengths() {
        let l = default_day_lengths();
        assert_eq!(l.len(), 13);
        assert_eq!((l[0], l[12]), (32, 131_072));
    }
}
