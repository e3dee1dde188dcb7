//! Exhaustive scans over rule numbers and lookback windows.
//!
//! Every scan starts from the all-UP history. Rows come back in ascending rule
//! (or window) order, so a range split across workers and concatenated in
//! range order reproduces a single sequential scan exactly.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::Range;

use crate::automaton::{canonical_rule, rule_space, Relabeling, RuleSpec, MAX_RELABEL_STATES};
use crate::dynamics::{classify, find_cycle, init_history, word_count, Complexity, CycleScratch, WordMap};
use crate::error::{Error, Result};

/// One scanned `(s, k, w, rule)` combination.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RuleCatalogRow {
    pub s: u32,
    pub k: u32,
    pub w: u32,
    pub rule: u64,
    pub period: u64,
    pub transient: u64,
    pub class: Complexity,
    /// `period / k^w`.
    pub pct_of_max: f64,
}

impl RuleCatalogRow {
    fn new(s: u32, k: u32, w: u32, rule: u64, transient: u64, period: u64) -> Self {
        let max = word_count(k, w).unwrap_or(u128::MAX);
        Self {
            s,
            k,
            w,
            rule,
            period,
            transient,
            class: classify(period, k, w).class,
            pct_of_max: period as f64 / max as f64,
        }
    }

    /// `k^w`, the longest possible period.
    pub fn max_period(&self) -> u128 {
        word_count(self.k, self.w).unwrap_or(u128::MAX)
    }
}

/// Full rule range `0..(s·k)^(s·k)` for scanning, if it fits in `u64`.
pub fn full_range(s: u32, k: u32) -> Result<Range<u64>> {
    let limit = rule_space(s, k).ok_or(Error::InvalidRange("rule space exceeds 64 bits"))?;
    let end = u64::try_from(limit).map_err(|_| Error::InvalidRange("rule space exceeds 64 bits"))?;
    Ok(0..end)
}

/// Scans every rule in `rules` (default: the whole space) at window `w`.
pub fn scan_rules(s: u32, k: u32, w: u32, rules: Option<Range<u64>>) -> Result<Vec<RuleCatalogRow>> {
    let full = full_range(s, k);
    let rules = match rules {
        Some(r) => {
            if r.start > r.end {
                return Err(Error::InvalidRange("rule range start exceeds end"));
            }
            if let Ok(full) = &full {
                if r.end > full.end {
                    return Err(Error::InvalidRange("rule range exceeds the rule space"));
                }
            }
            r
        }
        None => full?,
    };
    if rules.is_empty() {
        return Ok(Vec::new());
    }
    // validates s and k before any allocation
    let first = RuleSpec::new(s, k, rules.start, 2)?;
    let start = init_history(w, k)?.pack()?;
    let words = WordMap::new(&first, w)?.words();
    let mut scratch = CycleScratch::new(words);
    let mut rows = Vec::with_capacity((rules.end - rules.start) as usize);
    for rule in rules {
        let spec = first.with_rule(rule)?;
        let (transient, period) = match scratch.as_mut() {
            Some(scratch) => scratch.shape(&WordMap::new(&spec, w)?, start),
            None => {
                let r = find_cycle(&spec, w, &init_history(w, k)?)?;
                (r.transient, r.period)
            }
        };
        rows.push(RuleCatalogRow::new(s, k, w, rule, transient, period));
    }
    Ok(rows)
}

/// One row per window in `w_min..=w_max` for a single rule.
pub fn scan_windows(rule: u64, s: u32, k: u32, w_min: u32, w_max: u32) -> Result<Vec<RuleCatalogRow>> {
    if w_min > w_max {
        return Err(Error::InvalidRange("w_min exceeds w_max"));
    }
    if w_min < 1 {
        return Err(Error::EmptyWindow);
    }
    let spec = RuleSpec::new(s, k, rule, 2)?;
    (w_min..=w_max)
        .map(|w| {
            let r = find_cycle(&spec, w, &init_history(w, k)?)?;
            Ok(RuleCatalogRow::new(s, k, w, rule, r.transient, r.period))
        })
        .collect()
}

/// Class counts and the complex rules of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanSummary {
    pub rows: usize,
    pub simple: usize,
    pub complex: usize,
    pub maximally_complex: usize,
    /// Distinct rule numbers classed `Complex` or `MaximallyComplex`, ascending.
    pub complex_rules: Vec<u64>,
    /// Complex rules counted once per state-relabeling class; `None` when a
    /// row has more states than the relabeling search supports.
    pub complex_up_to_relabeling: Option<usize>,
}

impl ScanSummary {
    /// `Complex` plus `MaximallyComplex` rows.
    pub fn complex_total(&self) -> usize {
        self.complex + self.maximally_complex
    }
}

pub fn summarize_scan(rows: &[RuleCatalogRow]) -> Result<ScanSummary> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut summary = ScanSummary {
        rows: rows.len(),
        ..ScanSummary::default()
    };
    let mut complex = BTreeSet::new();
    let mut classes = BTreeSet::new();
    let mut relabel_ok = true;
    for row in rows {
        match row.class {
            Complexity::Simple => summary.simple += 1,
            Complexity::Complex => summary.complex += 1,
            Complexity::MaximallyComplex => summary.maximally_complex += 1,
        }
        if row.class.is_complex() {
            complex.insert(row.rule);
            if row.s > MAX_RELABEL_STATES {
                relabel_ok = false;
            } else if relabel_ok {
                let canon = canonical_rule(row.rule, row.s, row.k, Relabeling::Free)?;
                classes.insert((row.s, row.k, canon));
            }
        }
    }
    summary.complex_rules = complex.into_iter().collect();
    summary.complex_up_to_relabeling = relabel_ok.then_some(classes.len());
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn two_state_w6_complex_set() {
        let rows = scan_rules(2, 2, 6, None).unwrap();
        assert_eq!(rows.len(), 256);
        assert!(rows.iter().enumerate().all(|(i, r)| r.rule == i as u64));
        let summary = summarize_scan(&rows).unwrap();
        assert_eq!(summary.complex_rules, vec![54, 201]);
        assert_eq!(summary.complex_up_to_relabeling, Some(1));
    }

    #[test]
    fn single_state_rules_are_never_complex() {
        let rows = scan_rules(1, 2, 9, None).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(summarize_scan(&rows).unwrap().complex_total(), 0);
    }

    #[test]
    fn sub_range_matches_full_scan() {
        let full = scan_rules(2, 2, 7, None).unwrap();
        let part = scan_rules(2, 2, 7, Some(50..60)).unwrap();
        assert_eq!(&full[50..60], &part[..]);
        assert!(scan_rules(2, 2, 7, Some(250..257)).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let reversed = 9..3;
        assert!(scan_rules(2, 2, 7, Some(reversed)).is_err());
        assert_eq!(scan_rules(2, 2, 7, Some(9..9)).unwrap(), vec![]);
    }

    #[test]
    fn scan_rows_match_find_cycle() {
        for row in scan_rules(2, 3, 4, Some(1000..1100)).unwrap() {
            let spec = RuleSpec::new(2, 3, row.rule, 2).unwrap();
            let r = find_cycle(&spec, 4, &init_history(4, 3).unwrap()).unwrap();
            assert_eq!((row.transient, row.period, row.class), (r.transient, r.period, r.class));
        }
    }

    #[test]
    fn window_scan_of_rule_54() {
        let rows = scan_windows(54, 2, 2, 5, 9).unwrap();
        let periods: Vec<u64> = rows.iter().map(|r| r.period).collect();
        assert_eq!(periods, vec![21, 63, 127, 63, 73]);
        assert_eq!(rows[0].pct_of_max, 21.0 / 32.0);
        assert_eq!(rows[0].max_period(), 32);
        assert!(scan_windows(54, 2, 2, 9, 5).is_err());
    }

    #[test]
    fn always_sell_has_period_one() {
        for r in scan_windows(170, 2, 2, 1, 12).unwrap() {
            assert_eq!(r.period, 1);
        }
    }

    #[test]
    fn summary_counts() {
        let rows = scan_windows(54, 2, 2, 8, 8).unwrap();
        let s = summarize_scan(&rows).unwrap();
        assert_eq!((s.simple, s.complex, s.maximally_complex), (1, 0, 0));
        assert!(s.complex_rules.is_empty());
        assert_eq!(summarize_scan(&[]), Err(Error::EmptyInput));
    }
}
