use thiserror::Error;

/// Errors raised by the model, scans and statistics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state count must be at least 1, got {0}")]
    InvalidStateCount(u32),

    #[error("symbol count must be in 1..=255, got {0}")]
    InvalidSymbolCount(u32),

    #[error("action base must be at least 2 when k >= 4, got {0}")]
    InvalidBase(i64),

    #[error("rule {rule} out of range for s={states}, k={symbols} (limit {limit})")]
    RuleOutOfRange {
        rule: u64,
        states: u32,
        symbols: u32,
        limit: u128,
    },

    #[error("malformed transition table: {0}")]
    MalformedTable(&'static str),

    #[error("state {state} out of range 1..={states}")]
    StateOutOfRange { state: u32, states: u32 },

    #[error("symbol {symbol} out of range 0..{symbols}")]
    SymbolOutOfRange { symbol: u32, symbols: u32 },

    #[error("lookback window must hold at least one movement")]
    EmptyWindow,

    #[error("window holds {got} movements, expected {expected}")]
    WindowLength { expected: usize, got: usize },

    #[error("window alphabet k={got} does not match rule alphabet k={expected}")]
    AlphabetMismatch { expected: u32, got: u32 },

    #[error("k^w = {words} history words exceeds the guard of {limit}")]
    ResourceGuard { words: u128, limit: u128 },

    #[error("action strength b^{exponent} overflows for b={base}")]
    ActionOverflow { base: i64, exponent: u32 },

    #[error("moments are undefined for a series with zero variance")]
    ZeroVariance,

    #[error("series of length {len} is not divisible into days of {ticks_per_day} ticks")]
    NotDivisible { len: usize, ticks_per_day: usize },

    #[error("{what} must be at least 1")]
    NonPositive { what: &'static str },

    #[error("input is empty")]
    EmptyInput,

    #[error("series of length {len} is shorter than the window {window}")]
    SeriesTooShort { len: usize, window: usize },

    #[error("invalid range: {0}")]
    InvalidRange(&'static str),

    #[error("relabeling search supports at most {max} states, got {states}")]
    TooManyStates { states: u32, max: u32 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
