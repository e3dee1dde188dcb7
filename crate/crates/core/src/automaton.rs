//! Numbered transducer rules and the investor's daily decision procedure.
//!
//! Rules follow Wolfram's numbering for `s`-state, `k`-symbol transducer
//! finite automata: the rule number `m` is written in base `s·k` as exactly
//! `s·k` digits, most significant first, and split into `s` groups of `k`
//! digits. Digit `j` (1-based) of group `i` describes the edge leaving state
//! `i` on input symbol `k - j`; its value `d` encodes the next state
//! `d / k + 1` and the output symbol `d mod k`.
//!
//! For two symbols, `1` is an UP movement or a buy and `0` is a DOWN movement
//! or a sell. Input and output alphabets are the same alphabet.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One market movement or trading action, `0..k`.
pub type Symbol = u8;

/// DOWN movement / sell for two-symbol rules.
pub const DOWN: Symbol = 0;
/// UP movement / buy for two-symbol rules.
pub const UP: Symbol = 1;

/// The investor always begins each day in state 1.
pub const START_STATE: u32 = 1;

/// Largest state count accepted by the relabeling search (`8! = 40320` permutations).
pub const MAX_RELABEL_STATES: u32 = 8;

/// A numbered `s`-state, `k`-symbol rule together with its action base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RuleSpec {
    states: u32,
    symbols: u32,
    rule: u64,
    base: i64,
}

impl RuleSpec {
    /// Validates `s ≥ 1`, `1 ≤ k ≤ 255`, `m < (s·k)^(s·k)` and, for `k ≥ 4`, `b ≥ 2`.
    ///
    /// The base is carried but ignored when `k ≤ 3`.
    pub fn new(states: u32, symbols: u32, rule: u64, base: i64) -> Result<Self> {
        check_shape(states, symbols)?;
        if symbols >= 4 && base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if let Some(limit) = rule_space(states, symbols) {
            if u128::from(rule) >= limit {
                return Err(Error::RuleOutOfRange {
                    rule,
                    states,
                    symbols,
                    limit,
                });
            }
        }
        Ok(Self {
            states,
            symbols,
            rule,
            base,
        })
    }

    /// A two-state, buy/sell rule such as rule 54.
    pub fn binary(rule: u64) -> Result<Self> {
        Self::new(2, 2, rule, 2)
    }

    pub fn states(&self) -> u32 {
        self.states
    }

    pub fn symbols(&self) -> u32 {
        self.symbols
    }

    pub fn rule(&self) -> u64 {
        self.rule
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    /// Same shape and base, different rule number.
    pub fn with_rule(&self, rule: u64) -> Result<Self> {
        Self::new(self.states, self.symbols, rule, self.base)
    }

    pub fn table(&self) -> TransitionTable {
        decode_rule(self)
    }

    /// Action value of `symbol` under this rule's alphabet and base.
    pub fn action_value(&self, symbol: Symbol) -> Result<i64> {
        action_value(symbol, self.symbols, self.base)
    }
}

fn check_shape(states: u32, symbols: u32) -> Result<()> {
    if states < 1 {
        return Err(Error::InvalidStateCount(states));
    }
    if !(1..=255).contains(&symbols) {
        return Err(Error::InvalidSymbolCount(symbols));
    }
    Ok(())
}

/// Number of distinct rules, `(s·k)^(s·k)`, or `None` if it does not fit in a `u128`.
pub fn rule_space(states: u32, symbols: u32) -> Option<u128> {
    let n = u128::from(states).checked_mul(u128::from(symbols))?;
    let exp = u32::try_from(n).ok()?;
    n.checked_pow(exp)
}

/// Destination and output of one edge. States are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Transition {
    pub next: u32,
    pub output: Symbol,
}

/// A total map `(state, input) -> (next state, output)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionTable {
    states: u32,
    symbols: u32,
    // indexed by (state - 1) * k + input
    entries: Vec<Transition>,
}

impl TransitionTable {
    /// Builds a table from explicit `((state, input), (next, output))` edges.
    ///
    /// Every `(state, input)` pair must appear exactly once.
    pub fn from_edges<I>(states: u32, symbols: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), (u32, u32))>,
    {
        check_shape(states, symbols)?;
        let len = states as usize * symbols as usize;
        let mut slots: Vec<Option<Transition>> = alloc::vec![None; len];
        for ((state, input), (next, output)) in edges {
            if state < 1 || state > states || next < 1 || next > states {
                return Err(Error::MalformedTable("state out of range"));
            }
            if input >= symbols || output >= symbols {
                return Err(Error::MalformedTable("symbol out of range"));
            }
            let slot = &mut slots[(state as usize - 1) * symbols as usize + input as usize];
            if slot.is_some() {
                return Err(Error::MalformedTable("duplicate (state, input) entry"));
            }
            *slot = Some(Transition {
                next,
                output: output as Symbol,
            });
        }
        let entries = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::MalformedTable("missing (state, input) entry"))?;
        Ok(Self {
            states,
            symbols,
            entries,
        })
    }

    pub fn states(&self) -> u32 {
        self.states
    }

    pub fn symbols(&self) -> u32 {
        self.symbols
    }

    #[inline]
    pub(crate) fn entry(&self, state: u32, input: Symbol) -> Transition {
        self.entries[(state as usize - 1) * self.symbols as usize + input as usize]
    }

    /// The unique edge leaving `state` on `input`.
    pub fn step(&self, state: u32, input: Symbol) -> Result<Transition> {
        if state < 1 || state > self.states {
            return Err(Error::StateOutOfRange {
                state,
                states: self.states,
            });
        }
        self.check_symbol(input)?;
        Ok(self.entry(state, input))
    }

    fn check_symbol(&self, symbol: Symbol) -> Result<()> {
        if u32::from(symbol) >= self.symbols {
            return Err(Error::SymbolOutOfRange {
                symbol: symbol.into(),
                symbols: self.symbols,
            });
        }
        Ok(())
    }

    /// Runs one day's decision over `movements`, given newest first.
    ///
    /// Execution starts in state 1 and consumes the most recent movement
    /// first; the action is the output of the last edge taken, the one that
    /// reads the oldest movement.
    pub fn decide(&self, movements: &[Symbol]) -> Result<Symbol> {
        if movements.is_empty() {
            return Err(Error::EmptyWindow);
        }
        for &m in movements {
            self.check_symbol(m)?;
        }
        Ok(self.decide_unchecked(movements))
    }

    #[inline]
    pub(crate) fn decide_unchecked(&self, movements: &[Symbol]) -> Symbol {
        let mut state = START_STATE;
        let mut output = 0;
        for &m in movements {
            let t = self.entry(state, m);
            state = t.next;
            output = t.output;
        }
        output
    }

    /// All edges in numbering order: state ascending, then input descending.
    pub fn edges(&self) -> impl Iterator<Item = ((u32, Symbol), Transition)> + '_ {
        let k = self.symbols;
        (1..=self.states).flat_map(move |state| {
            (0..k).rev().map(move |input| {
                let input = input as Symbol;
                ((state, input), self.entry(state, input))
            })
        })
    }

    /// Inverse of [`decode_rule`].
    pub fn encode(&self) -> Result<u64> {
        let n = u128::from(self.states) * u128::from(self.symbols);
        let k = u128::from(self.symbols);
        let mut m: u128 = 0;
        for (_, t) in self.edges() {
            let digit = u128::from(t.next - 1) * k + u128::from(t.output);
            m = m
                .checked_mul(n)
                .and_then(|v| v.checked_add(digit))
                .ok_or(Error::InvalidRange("rule number exceeds 64 bits"))?;
        }
        u64::try_from(m).map_err(|_| Error::InvalidRange("rule number exceeds 64 bits"))
    }

    /// Renames every state `q` to `perm[q - 1]`.
    ///
    /// `perm` must be a permutation of `1..=s`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        let s = self.states as usize;
        if perm.len() != s {
            return Err(Error::InvalidRange("permutation length must equal the state count"));
        }
        let mut seen = alloc::vec![false; s];
        for &p in perm {
            if p < 1 || p as usize > s || core::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::InvalidRange("not a permutation of 1..=s"));
            }
        }
        let k = self.symbols as usize;
        let mut entries = alloc::vec![Transition { next: 1, output: 0 }; self.entries.len()];
        for (idx, t) in self.entries.iter().enumerate() {
            let (state, input) = (idx / k, idx % k);
            let new_state = perm[state] as usize;
            entries[(new_state - 1) * k + input] = Transition {
                next: perm[t.next as usize - 1],
                output: t.output,
            };
        }
        Ok(Self {
            states: self.states,
            symbols: self.symbols,
            entries,
        })
    }
}

/// Expands a rule number into its transition table.
pub fn decode_rule(spec: &RuleSpec) -> TransitionTable {
    let s = spec.states;
    let k = spec.symbols;
    let n = s as usize * k as usize;
    // least significant digit first
    let mut digits = Vec::with_capacity(n);
    let mut rest = spec.rule;
    for _ in 0..n {
        digits.push(rest % n as u64);
        rest /= n as u64;
    }
    let mut entries = alloc::vec![Transition { next: 1, output: 0 }; n];
    for (pos, &d) in digits.iter().rev().enumerate() {
        let state = pos / k as usize;
        let input = k as usize - 1 - pos % k as usize;
        entries[state * k as usize + input] = Transition {
            next: (d / u64::from(k)) as u32 % s + 1,
            output: (d % u64::from(k)) as Symbol,
        };
    }
    TransitionTable {
        states: s,
        symbols: k,
        entries,
    }
}

/// Rule number of a well-formed table.
pub fn encode_rule(table: &TransitionTable) -> Result<u64> {
    table.encode()
}

/// Price change contributed by an action symbol.
///
/// Symbols map in ascending order onto
/// `{-b^(h-1), …, -b^0, (0 if k odd), b^0, …, b^(h-1)}` with `h = k / 2`,
/// so for `k = 2` symbol 0 is −1 and symbol 1 is +1, and for `k = 1` the
/// single symbol is 0.
pub fn action_value(symbol: Symbol, symbols: u32, base: i64) -> Result<i64> {
    let sym = u32::from(symbol);
    if sym >= symbols {
        return Err(Error::SymbolOutOfRange {
            symbol: sym,
            symbols,
        });
    }
    if symbols >= 4 && base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let half = symbols / 2;
    let odd = symbols % 2 == 1;
    let power = |exponent: u32| {
        base.checked_pow(exponent)
            .ok_or(Error::ActionOverflow { base, exponent })
    };
    if sym < half {
        Ok(-power(half - 1 - sym)?)
    } else if odd && sym == half {
        Ok(0)
    } else {
        let first_buy = if odd { half + 1 } else { half };
        power(sym - first_buy)
    }
}

/// The symbol whose action value is `+1` (a normal buy, or UP).
///
/// For `k = 1` there is no buy and the only symbol, 0, is returned.
pub fn mildest_buy(symbols: u32) -> Symbol {
    match symbols {
        0 | 1 => 0,
        k if k % 2 == 0 => (k / 2) as Symbol,
        k => (k / 2 + 1) as Symbol,
    }
}

/// How state labels may be permuted when comparing two rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Relabeling {
    /// Any permutation of state labels (structural isomorphism).
    #[default]
    Free,
    /// Permutations that keep state 1 fixed, so the start state is preserved
    /// and the two rules behave identically on every window.
    PinStart,
}

/// Advances `perm` to the next lexicographic permutation; false once exhausted.
fn next_permutation(perm: &mut [u32]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let Some(i) = (0..perm.len() - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Calls `f` with every permutation allowed by `mode`, stopping early when it returns true.
fn any_permutation(states: u32, mode: Relabeling, mut f: impl FnMut(&[u32]) -> bool) -> Result<bool> {
    if states > MAX_RELABEL_STATES {
        return Err(Error::TooManyStates {
            states,
            max: MAX_RELABEL_STATES,
        });
    }
    let mut perm: Vec<u32> = (1..=states).collect();
    let fixed = match mode {
        Relabeling::Free => 0,
        Relabeling::PinStart => 1.min(perm.len()),
    };
    loop {
        if f(&perm) {
            return Ok(true);
        }
        if !next_permutation(&mut perm[fixed..]) {
            return Ok(false);
        }
    }
}

/// True iff some permutation of state labels allowed by `mode` maps rule `a` onto rule `b`.
pub fn relabel_equivalent(a: u64, b: u64, states: u32, symbols: u32, mode: Relabeling) -> Result<bool> {
    let ta = RuleSpec::new(states, symbols, a, 2)?.table();
    let tb = RuleSpec::new(states, symbols, b, 2)?.table();
    let mut failure = None;
    let found = any_permutation(states, mode, |perm| match ta.relabel(perm) {
        Ok(t) => t == tb,
        Err(e) => {
            failure = Some(e);
            true
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Smallest rule number reachable from `rule` by a relabeling allowed by `mode`.
pub fn canonical_rule(rule: u64, states: u32, symbols: u32, mode: Relabeling) -> Result<u64> {
    let table = RuleSpec::new(states, symbols, rule, 2)?.table();
    let mut best = rule;
    let mut failure = None;
    any_permutation(states, mode, |perm| {
        match table.relabel(perm).and_then(|t| t.encode()) {
            Ok(m) => best = best.min(m),
            Err(e) => failure = Some(e),
        }
        failure.is_some()
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(best),
    }
}
