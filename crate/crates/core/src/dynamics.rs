//! The representative-investor feedback loop and its cycle structure.
//!
//! The market state is the last `w` movements. Each day the investor's rule
//! maps that history word to an action, the action becomes the newest
//! movement, and the oldest movement drops out. This is a deterministic map on
//! the `k^w` possible words, so every orbit ends in a cycle.
//!
//! Packed words put the movement at index `i` (index 0 = most recent) in base-`k`
//! digit `i`; for two symbols, bit 0 is yesterday.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::automaton::{mildest_buy, RuleSpec, Symbol, TransitionTable};
use crate::error::{Error, Result};

/// Largest state space `k^w` accepted by cycle detection and graph export.
pub const MAX_WORDS: u128 = 1 << 32;

/// Up to this many words, first visits are recorded in a dense array.
const DENSE_WORDS: u128 = 1 << 26;

/// Windows shorter than this are accepted but flagged.
pub const MIN_ADVISED_WINDOW: u32 = 5;

/// Number of history words, `k^w`, or `None` on overflow.
pub fn word_count(symbols: u32, window: u32) -> Option<u128> {
    u128::from(symbols).checked_pow(window)
}

fn guarded_word_count(symbols: u32, window: u32) -> Result<u64> {
    let words = word_count(symbols, window).unwrap_or(u128::MAX);
    if words > MAX_WORDS {
        return Err(Error::ResourceGuard {
            words,
            limit: MAX_WORDS,
        });
    }
    Ok(words as u64)
}

/// The last `w` market movements, most recent first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HistoryWord {
    symbols: u32,
    movements: Vec<Symbol>,
}

impl HistoryWord {
    /// `movements[0]` is the most recent day.
    pub fn new(movements: Vec<Symbol>, symbols: u32) -> Result<Self> {
        if movements.is_empty() {
            return Err(Error::EmptyWindow);
        }
        if let Some(&bad) = movements.iter().find(|&&m| u32::from(m) >= symbols) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad.into(),
                symbols,
            });
        }
        Ok(Self { symbols, movements })
    }

    /// Builds a word from movements listed in calendar order (oldest first).
    pub fn from_oldest_first(movements: &[Symbol], symbols: u32) -> Result<Self> {
        Self::new(movements.iter().rev().copied().collect(), symbols)
    }

    pub fn movements(&self) -> &[Symbol] {
        &self.movements
    }

    pub fn oldest_first(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.movements.iter().rev().copied()
    }

    pub fn len(&self) -> usize {
        self.movements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.movements.is_empty()
    }

    pub fn symbols(&self) -> u32 {
        self.symbols
    }

    /// Base-`k` integer with the movement at index `i` as digit `i`.
    pub fn pack(&self) -> Result<u64> {
        let words = word_count(self.symbols, self.len() as u32).unwrap_or(u128::MAX);
        if words > u128::from(u64::MAX) {
            return Err(Error::ResourceGuard {
                words,
                limit: u64::MAX.into(),
            });
        }
        let k = u64::from(self.symbols);
        Ok(self
            .movements
            .iter()
            .rev()
            .fold(0u64, |acc, &m| acc * k + u64::from(m)))
    }

    /// Inverse of [`HistoryWord::pack`].
    pub fn unpack(packed: u64, window: u32, symbols: u32) -> Result<Self> {
        if window == 0 {
            return Err(Error::EmptyWindow);
        }
        if symbols == 0 {
            return Err(Error::InvalidSymbolCount(0));
        }
        let words = word_count(symbols, window).unwrap_or(u128::MAX);
        if u128::from(packed) >= words {
            return Err(Error::InvalidRange("packed word exceeds k^w"));
        }
        let k = u64::from(symbols);
        let mut rest = packed;
        let movements = (0..window)
            .map(|_| {
                let d = rest % k;
                rest /= k;
                d as Symbol
            })
            .collect();
        Ok(Self { symbols, movements })
    }
}

/// The default starting history: `w` normal-buy (UP) movements.
pub fn init_history(window: u32, symbols: u32) -> Result<HistoryWord> {
    if window < 1 {
        return Err(Error::EmptyWindow);
    }
    if !(1..=255).contains(&symbols) {
        return Err(Error::InvalidSymbolCount(symbols));
    }
    HistoryWord::new(alloc::vec![mildest_buy(symbols); window as usize], symbols)
}

/// One day: decide on `window`, then push the action in as the newest movement.
pub fn advance(table: &TransitionTable, window: &HistoryWord) -> Result<(HistoryWord, Symbol)> {
    check_alphabet(table.symbols(), window)?;
    let emitted = table.decide(window.movements())?;
    let mut movements = Vec::with_capacity(window.len());
    movements.push(emitted);
    movements.extend_from_slice(&window.movements()[..window.len() - 1]);
    Ok((
        HistoryWord {
            symbols: window.symbols,
            movements,
        },
        emitted,
    ))
}

fn check_alphabet(symbols: u32, window: &HistoryWord) -> Result<()> {
    if window.symbols != symbols {
        return Err(Error::AlphabetMismatch {
            expected: symbols,
            got: window.symbols,
        });
    }
    Ok(())
}

fn check_window(spec: &RuleSpec, window: u32, init: &HistoryWord) -> Result<()> {
    if window < 1 {
        return Err(Error::EmptyWindow);
    }
    check_alphabet(spec.symbols(), init)?;
    if init.len() != window as usize {
        return Err(Error::WindowLength {
            expected: window as usize,
            got: init.len(),
        });
    }
    Ok(())
}

/// A generated tick series. `prices[i]` is the cumulative change through tick `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Series {
    pub movements: Vec<Symbol>,
    pub changes: Vec<i64>,
    pub prices: Vec<i64>,
}

impl Series {
    /// Builds changes and running prices from a movement sequence.
    pub fn from_movements(movements: Vec<Symbol>, symbols: u32, base: i64) -> Result<Self> {
        let values: Vec<i64> = (0..symbols)
            .map(|s| crate::automaton::action_value(s as Symbol, symbols, base))
            .collect::<Result<_>>()?;
        let changes: Vec<i64> = movements
            .iter()
            .map(|&m| {
                values.get(m as usize).copied().ok_or(Error::SymbolOutOfRange {
                    symbol: m.into(),
                    symbols,
                })
            })
            .collect::<Result<_>>()?;
        let prices = changes
            .iter()
            .scan(0i64, |p, &c| {
                *p += c;
                Some(*p)
            })
            .collect();
        Ok(Self {
            movements,
            changes,
            prices,
        })
    }

    pub fn len(&self) -> usize {
        self.movements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.movements.is_empty()
    }
}

/// Emits `n_ticks` movements starting from `init`.
pub fn generate_series(spec: &RuleSpec, window: u32, n_ticks: usize, init: &HistoryWord) -> Result<Series> {
    if n_ticks < 1 {
        return Err(Error::NonPositive { what: "tick count" });
    }
    let movements = generate_movements(spec, window, n_ticks, init)?;
    Series::from_movements(movements, spec.symbols(), spec.base())
}

/// Movement symbols only; skips building prices.
pub fn generate_movements(spec: &RuleSpec, window: u32, n_ticks: usize, init: &HistoryWord) -> Result<Vec<Symbol>> {
    check_window(spec, window, init)?;
    let table = spec.table();
    let w = window as usize;
    // calendar order: the initial history followed by every emitted movement
    let mut history: Vec<Symbol> = Vec::with_capacity(w + n_ticks);
    history.extend(init.oldest_first());
    for _ in 0..n_ticks {
        let recent = &history[history.len() - w..];
        let action = table.decide_unchecked_iter(recent.iter().rev().copied());
        history.push(action);
    }
    history.drain(..w);
    Ok(history)
}

impl TransitionTable {
    #[inline]
    fn decide_unchecked_iter(&self, newest_first: impl Iterator<Item = Symbol>) -> Symbol {
        let mut state = crate::automaton::START_STATE;
        let mut output = 0;
        for m in newest_first {
            let t = self.entry(state, m);
            state = t.next;
            output = t.output;
        }
        output
    }
}

/// The induced map on packed words.
pub(crate) struct WordMap {
    table: TransitionTable,
    window: u32,
    symbols: u64,
    // k^(w-1): packed words are reduced modulo this before the shift
    high: u64,
}

impl WordMap {
    pub(crate) fn new(spec: &RuleSpec, window: u32) -> Result<Self> {
        if window < 1 {
            return Err(Error::EmptyWindow);
        }
        let words = guarded_word_count(spec.symbols(), window)?;
        let symbols = u64::from(spec.symbols());
        Ok(Self {
            table: spec.table(),
            window,
            symbols,
            high: words / symbols,
        })
    }

    #[inline]
    pub(crate) fn decide(&self, word: u64) -> Symbol {
        let mut state = crate::automaton::START_STATE;
        let mut output = 0;
        let mut rest = word;
        if self.symbols == 2 {
            for _ in 0..self.window {
                let t = self.table.entry(state, (rest & 1) as Symbol);
                rest >>= 1;
                state = t.next;
                output = t.output;
            }
        } else {
            for _ in 0..self.window {
                let t = self.table.entry(state, (rest % self.symbols) as Symbol);
                rest /= self.symbols;
                state = t.next;
                output = t.output;
            }
        }
        output
    }

    #[inline]
    pub(crate) fn next(&self, word: u64) -> (u64, Symbol) {
        let out = self.decide(word);
        ((word % self.high) * self.symbols + u64::from(out), out)
    }

    pub(crate) fn words(&self) -> u64 {
        self.high * self.symbols
    }
}

/// Complexity class of a rule at a given window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Complexity {
    /// Period at most `k^w / 2`.
    Simple,
    /// `k^w / 2 < period < k^w`.
    Complex,
    /// Period equal to `k^w`: every history lies on the cycle.
    MaximallyComplex,
}

impl Complexity {
    /// True for both `Complex` and `MaximallyComplex`.
    pub fn is_complex(self) -> bool {
        !matches!(self, Complexity::Simple)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Complexity::Simple => "Simple",
            Complexity::Complex => "Complex",
            Complexity::MaximallyComplex => "MaximallyComplex",
        }
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Complexity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Simple" => Ok(Complexity::Simple),
            "Complex" => Ok(Complexity::Complex),
            "MaximallyComplex" => Ok(Complexity::MaximallyComplex),
            _ => Err(Error::InvalidRange("unknown complexity class")),
        }
    }
}

/// Non-fatal notes attached to a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Advisory {
    /// `w < 5`: short cycles can still exceed half the tiny state space.
    ShortWindow { window: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub class: Complexity,
    pub advisory: Option<Advisory>,
}

/// Classifies a cycle length against the `k^w` possible histories.
///
/// The threshold is strict: a period of exactly `k^w / 2` is simple. A single
/// history (`k = 1`) can only trend and is always simple.
pub fn classify(period: u64, symbols: u32, window: u32) -> Classification {
    let max = word_count(symbols, window).unwrap_or(u128::MAX);
    let p = u128::from(period);
    let class = if max <= 1 {
        Complexity::Simple
    } else if p == max {
        Complexity::MaximallyComplex
    } else if p.saturating_mul(2) > max {
        Complexity::Complex
    } else {
        Complexity::Simple
    };
    let advisory = (window < MIN_ADVISED_WINDOW).then_some(Advisory::ShortWindow { window });
    Classification { class, advisory }
}

/// Transient length, cycle length and class of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CycleResult {
    /// Steps from the initial word to its first word on the cycle.
    pub transient: u64,
    /// Minimal cycle length.
    pub period: u64,
    pub class: Complexity,
}

enum FirstVisit {
    Dense(Vec<u32>),
    Sparse(BTreeMap<u64, u64>),
}

impl FirstVisit {
    fn for_words(words: u64) -> Self {
        if u128::from(words) <= DENSE_WORDS {
            FirstVisit::Dense(alloc::vec![u32::MAX; words as usize])
        } else {
            FirstVisit::Sparse(BTreeMap::new())
        }
    }

    /// Records `step` for `word` unless it was seen; returns the earlier step if so.
    #[inline]
    fn visit(&mut self, word: u64, step: u64) -> Option<u64> {
        match self {
            FirstVisit::Dense(slots) => {
                let slot = &mut slots[word as usize];
                if *slot == u32::MAX {
                    *slot = step as u32;
                    None
                } else {
                    Some(u64::from(*slot))
                }
            }
            FirstVisit::Sparse(map) => match map.entry(word) {
                alloc::collections::btree_map::Entry::Occupied(e) => Some(*e.get()),
                alloc::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(step);
                    None
                }
            },
        }
    }
}

/// Follows the orbit of `init` until a word repeats.
pub fn find_cycle(spec: &RuleSpec, window: u32, init: &HistoryWord) -> Result<CycleResult> {
    check_window(spec, window, init)?;
    let map = WordMap::new(spec, window)?;
    let start = init.pack()?;
    let (transient, period) = orbit_shape(&map, start, &mut FirstVisit::for_words(map.words()));
    Ok(CycleResult {
        transient,
        period,
        class: classify(period, spec.symbols(), window).class,
    })
}

fn orbit_shape(map: &WordMap, start: u64, seen: &mut FirstVisit) -> (u64, u64) {
    let mut word = start;
    let mut step = 0u64;
    loop {
        if let Some(first) = seen.visit(word, step) {
            return (first, step - first);
        }
        word = map.next(word).0;
        step += 1;
    }
}

/// Reusable scratch space for repeated cycle searches at one `(k, w)`.
pub(crate) struct CycleScratch {
    slots: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl CycleScratch {
    pub(crate) fn new(words: u64) -> Option<Self> {
        (u128::from(words) <= DENSE_WORDS).then(|| Self {
            slots: alloc::vec![0; words as usize],
            stamp: alloc::vec![0; words as usize],
            epoch: 0,
        })
    }

    /// Same result as the allocating search, with the table reset in O(1).
    pub(crate) fn shape(&mut self, map: &WordMap, start: u64) -> (u64, u64) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let mut word = start;
        let mut step = 0u32;
        loop {
            let idx = word as usize;
            if self.stamp[idx] == self.epoch {
                let first = self.slots[idx];
                return (u64::from(first), u64::from(step - first));
            }
            self.stamp[idx] = self.epoch;
            self.slots[idx] = step;
            word = map.next(word).0;
            step += 1;
        }
    }
}

/// Packed words on the cycle reached from `init`, in visiting order starting
/// from the first cycle word of the orbit.
pub fn cycle_members(spec: &RuleSpec, window: u32, init: &HistoryWord) -> Result<Vec<u64>> {
    let result = find_cycle(spec, window, init)?;
    let map = WordMap::new(spec, window)?;
    let mut word = init.pack()?;
    for _ in 0..result.transient {
        word = map.next(word).0;
    }
    let mut members = Vec::with_capacity(result.period as usize);
    for _ in 0..result.period {
        members.push(word);
        word = map.next(word).0;
    }
    Ok(members)
}

/// One edge of the history-transition graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Edge {
    pub from: u64,
    pub to: u64,
    pub emitted: Symbol,
}

/// The full functional graph over all `k^w` packed words, one edge per word.
pub fn transition_graph(spec: &RuleSpec, window: u32) -> Result<Vec<Edge>> {
    let map = WordMap::new(spec, window)?;
    Ok((0..map.words())
        .map(|from| {
            let (to, emitted) = map.next(from);
            Edge { from, to, emitted }
        })
        .collect())
}
