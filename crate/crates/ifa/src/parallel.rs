//! Rule scans split across worker threads.

use std::ops::Range;
use std::thread;

use ifa_core::rulescan::{full_range, scan_rules};
use ifa_core::RuleCatalogRow;

use crate::CliError;

/// Splits `rules` into `workers` contiguous chunks, scans them concurrently and
/// concatenates the results in rule order.
///
/// The output is identical to a sequential [`scan_rules`] for any worker count.
pub fn scan_rules_parallel(
    s: u32,
    k: u32,
    w: u32,
    rules: Option<Range<u64>>,
    workers: usize,
) -> Result<Vec<RuleCatalogRow>, CliError> {
    let workers = workers.max(1);
    let rules = match rules {
        Some(r) => r,
        None => full_range(s, k)?,
    };
    if workers == 1 || rules.end.saturating_sub(rules.start) < workers as u64 {
        return Ok(scan_rules(s, k, w, Some(rules))?);
    }
    let chunks = split(rules, workers);
    let results: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(move || scan_rules(s, k, w, Some(chunk))))
            .collect();
        handles.into_iter().map(|h| h.join()).collect()
    });
    let mut rows = Vec::new();
    for result in results {
        rows.extend(result.map_err(|_| CliError::Worker)??);
    }
    Ok(rows)
}

/// Contiguous, near-equal chunks covering `range` in order.
fn split(range: Range<u64>, parts: usize) -> Vec<Range<u64>> {
    let len = range.end - range.start;
    let parts = parts as u64;
    (0..parts)
        .map(|i| range.start + len * i / parts..range.start + len * (i + 1) / parts)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_the_range() {
        let chunks = split(10..47, 8);
        assert_eq!(chunks.first().unwrap().start, 10);
        assert_eq!(chunks.last().unwrap().end, 47);
        assert!(chunks.windows(2).all(|p| p[0].end == p[1].start));
        assert_eq!(chunks.iter().map(|c| c.end - c.start).sum::<u64>(), 37);
    }

    #[test]
    fn tiny_ranges_fall_back_to_one_worker() {
        let rows = scan_rules_parallel(2, 2, 6, Some(54..56), 8).unwrap();
        assert_eq!(rows.iter().map(|r| r.rule).collect::<Vec<_>>(), vec![54, 55]);
    }
}
