//! CSV/JSON writers and the small text formats used on the command line.
//!
//! All writers are byte-deterministic: no timestamps, integers in full, and
//! floats in shortest round-trip form, so every number re-parses to the exact
//! in-memory value.

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use ifa_core::automaton::Symbol;
use ifa_core::stats::{Histogram, SummaryRow};
use ifa_core::{Edge, HistoryWord, RuleCatalogRow, Series, TransitionTable};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub const CATALOG_HEADER: [&str; 8] = ["s", "k", "w", "rule", "period", "transient", "class", "pct_of_max"];
pub const SERIES_HEADER: [&str; 4] = ["tick", "movement", "change", "price"];
pub const EDGE_HEADER: [&str; 3] = ["from_word", "to_word", "emitted_symbol"];
pub const SUMMARY_HEADER: [&str; 7] = [
    "ticks_per_day",
    "days",
    "distinct",
    "skewness",
    "excess_kurtosis",
    "se_skew",
    "se_kurt",
];
pub const HISTOGRAM_HEADER: [&str; 4] = ["bin_left", "bin_right", "count", "frequency"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    /// 1-based tick index.
    pub tick: usize,
    pub movement: Symbol,
    pub change: i64,
    pub price: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from_word: u64,
    pub to_word: u64,
    pub emitted_symbol: Symbol,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub ticks_per_day: usize,
    pub days: usize,
    pub distinct: usize,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub se_skew: f64,
    pub se_kurt: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramRecord {
    pub bin_left: f64,
    pub bin_right: f64,
    pub count: u64,
    pub frequency: f64,
}

pub fn series_records(series: &Series) -> Vec<SeriesRecord> {
    (0..series.len())
        .map(|i| SeriesRecord {
            tick: i + 1,
            movement: series.movements[i],
            change: series.changes[i],
            price: series.prices[i],
        })
        .collect()
}

pub fn edge_records(edges: &[Edge]) -> Vec<EdgeRecord> {
    edges
        .iter()
        .map(|e| EdgeRecord {
            from_word: e.from,
            to_word: e.to,
            emitted_symbol: e.emitted,
        })
        .collect()
}

pub fn summary_records(rows: &[SummaryRow]) -> Vec<SummaryRecord> {
    rows.iter()
        .map(|r| SummaryRecord {
            ticks_per_day: r.ticks_per_day,
            days: r.stats.n,
            distinct: r.stats.distinct,
            skewness: r.stats.skewness,
            excess_kurtosis: r.stats.excess_kurtosis,
            se_skew: r.stats.se_skew,
            se_kurt: r.stats.se_kurt,
        })
        .collect()
}

pub fn histogram_records(h: &Histogram) -> Vec<HistogramRecord> {
    h.counts
        .iter()
        .zip(h.frequencies())
        .enumerate()
        .map(|(i, (&count, frequency))| HistogramRecord {
            bin_left: h.edges[i],
            bin_right: h.edges[i + 1],
            count,
            frequency,
        })
        .collect()
}

/// Renders `rows` as CSV (with `header`, even when empty) or a JSON array.
pub fn to_bytes<T: Serialize>(rows: &[T], header: &[&str], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(header)?;
            for row in rows {
                w.serialize(row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rows)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

/// Parses bytes produced by [`to_bytes`].
pub fn from_bytes<T: DeserializeOwned>(bytes: &[u8], format: Format) -> Result<Vec<T>, CliError> {
    match format {
        Format::Csv => csv::Reader::from_reader(bytes)
            .deserialize()
            .collect::<Result<_, _>>()
            .map_err(CliError::from),
        Format::Json => Ok(serde_json::from_slice(bytes)?),
    }
}

pub fn catalog_bytes(rows: &[RuleCatalogRow], format: Format) -> Result<Vec<u8>, CliError> {
    to_bytes(rows, &CATALOG_HEADER, format)
}

/// Writes a scan catalog to `path` and returns the number of bytes written.
pub fn write_catalog(rows: &[RuleCatalogRow], format: Format, path: &Path) -> Result<usize, CliError> {
    let bytes = catalog_bytes(rows, format)?;
    fs::write(path, &bytes)?;
    Ok(bytes.len())
}

pub fn read_catalog(bytes: &[u8], format: Format) -> Result<Vec<RuleCatalogRow>, CliError> {
    from_bytes(bytes, format)
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<usize, CliError> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(bytes.len())
}

/// One `{state, input} -> {next, output}` line per edge, in numbering order.
pub fn decode_lines(table: &TransitionTable) -> String {
    table
        .edges()
        .map(|((state, input), t)| format!("{{{state},{input}}} -> {{{},{}}}\n", t.next, t.output))
        .collect()
}

/// Parses an initial history given oldest first.
///
/// Two-symbol histories use `U`/`D` (digits `1`/`0` also accepted); larger
/// alphabets use one digit per day, or comma-separated numbers when `k > 10`.
pub fn parse_history(text: &str, symbols: u32) -> Result<HistoryWord, CliError> {
    let text = text.trim();
    let bad = |c: &str| CliError::usage(format!("invalid history symbol {c:?} for k={symbols}"));
    let movements: Vec<Symbol> = if text.contains(',') {
        text.split(',')
            .map(|t| t.trim().parse::<Symbol>().map_err(|_| bad(t)))
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .map(|c| match (symbols, c) {
                (2, 'U' | 'u') => Ok(1),
                (2, 'D' | 'd') => Ok(0),
                (_, c) => c.to_digit(10).map(|d| d as Symbol).ok_or_else(|| bad(&c.to_string())),
            })
            .collect::<Result<_, _>>()?
    };
    Ok(HistoryWord::from_oldest_first(&movements, symbols)?)
}

/// Inclusive range `a..b` (or a single value `a`).
pub fn parse_inclusive<T>(text: &str) -> Result<(T, T), CliError>
where
    T: std::str::FromStr + PartialOrd + Copy,
{
    let parse = |t: &str| {
        t.trim()
            .parse::<T>()
            .map_err(|_| CliError::usage(format!("invalid number {t:?} in range {text:?}")))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(CliError::usage(format!("empty range {text:?}")));
    }
    Ok((lo, hi))
}
