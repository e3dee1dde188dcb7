//! Iterated finite automaton (IFA) market models.
//!
//! A single representative investor is modeled as an `s`-state, `k`-symbol
//! transducer. Each day it reads the last `w` market movements, newest first,
//! starting in state 1, and the output of its final transition becomes the
//! day's trade. Because the investor moves the price, that trade is also the
//! next market movement, which closes the feedback loop.
//!
//! The crate is `no_std` and only needs `alloc`:
//!
//! - [`automaton`]: rule numbering, transition tables and the decision procedure
//! - [`dynamics`]: history words, series generation, cycle detection, complexity classes
//! - [`rulescan`]: exhaustive scans over rule numbers and lookback windows
//! - [`stats`]: daily aggregation, moments, histograms and a random-walk baseline

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod automaton;
pub mod dynamics;
mod error;
pub mod rulescan;
pub mod stats;

pub use automaton::{action_value, RuleSpec, Symbol, Transition, TransitionTable};
pub use dynamics::{
    advance, classify, find_cycle, generate_series, init_history, transition_graph,
    Classification, Complexity, CycleResult, Edge, HistoryWord, Series,
};
pub use error::{Error, Result};
pub use rulescan::{scan_rules, scan_windows, summarize_scan, RuleCatalogRow, ScanSummary};
pub use stats::SeriesStats;
