//! Argument parsing and subcommand dispatch for the `ifa` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ifa_core::dynamics::{classify, word_count, Advisory};
use ifa_core::rulescan::{scan_windows, summarize_scan};
use ifa_core::stats::{
    default_day_lengths, histogram, moving_average, random_walk_baseline, summarize_ticks, summary_table,
    StandardErrorForm, DEFAULT_TOTAL_TICKS,
};
use ifa_core::{find_cycle, generate_series, init_history, transition_graph, HistoryWord, RuleSpec, Series};

use crate::format::{self, Format};
use crate::parallel::scan_rules_parallel;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ifa", version, about = "Simulate and analyze iterated finite automaton market models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    /// Rule number m, 0 <= m < (s*k)^(s*k)
    #[arg(long, default_value_t = 54)]
    pub rule: u64,
    /// Number of investor states
    #[arg(long = "s", default_value_t = 2)]
    pub states: u32,
    /// Number of symbols (market movements / actions)
    #[arg(long = "k", default_value_t = 2)]
    pub symbols: u32,
    /// Action base, used when k >= 4
    #[arg(long = "b", default_value_t = 2)]
    pub base: i64,
}

impl RuleArgs {
    fn spec(&self) -> Result<RuleSpec, CliError> {
        Ok(RuleSpec::new(self.states, self.symbols, self.rule, self.base)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BaselineArgs {
    /// Replace the rule's series with a seeded +/-1 random walk
    #[arg(long)]
    pub baseline: bool,
    /// Random-walk seed (requires --baseline)
    #[arg(long)]
    pub seed: Option<u64>,
}

impl BaselineArgs {
    fn seed(&self) -> Result<Option<u64>, CliError> {
        match (self.baseline, self.seed) {
            (false, Some(_)) => Err(CliError::usage("--seed is only valid with --baseline")),
            (false, None) => Ok(None),
            (true, seed) => Ok(Some(seed.unwrap_or(0))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeForm {
    /// 6/d and 24/d
    Literal,
    /// sqrt(6/d) and sqrt(24/d)
    Conventional,
}

impl From<SeForm> for StandardErrorForm {
    fn from(f: SeForm) -> Self {
        match f {
            SeForm::Literal => StandardErrorForm::Literal,
            SeForm::Conventional => StandardErrorForm::Conventional,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the transition table of a rule
    Decode {
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Generate a price series (CSV: tick, movement, change, price)
    Simulate {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long = "w", default_value_t = 10)]
        window: u32,
        #[arg(long, default_value_t = 1024)]
        ticks: usize,
        /// Initial history, oldest first (U/D for k=2, digits otherwise)
        #[arg(long)]
        init: Option<String>,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Measure the period, transient and complexity class of a rule
    Period {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long = "w", default_value_t = 10)]
        window: u32,
        #[arg(long)]
        init: Option<String>,
    },
    /// Periods of one rule over a range of lookback windows
    Table1 {
        #[command(flatten)]
        rule: RuleArgs,
        /// Inclusive window range, e.g. 5..22
        #[arg(long = "w", default_value = "5..22")]
        windows: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify every rule of an (s, k) space at one window
    Scan {
        #[arg(long = "s", default_value_t = 2)]
        states: u32,
        #[arg(long = "k", default_value_t = 2)]
        symbols: u32,
        #[arg(long = "w", default_value_t = 10)]
        window: u32,
        /// Inclusive rule range, e.g. 0..255; the whole space when omitted
        #[arg(long)]
        rules: Option<String>,
        /// Worker threads; defaults to the available parallelism
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Skewness, excess kurtosis and standard errors of daily changes
    Table2 {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long = "w", default_value_t = 22)]
        window: u32,
        #[arg(long, default_value_t = DEFAULT_TOTAL_TICKS)]
        ticks: usize,
        /// Comma-separated ticks per day; defaults to 32, 64, ..., 131072
        #[arg(long, value_delimiter = ',')]
        day_lengths: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = SeForm::Literal)]
        se: SeForm,
        #[arg(long)]
        init: Option<String>,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Histogram of block moving averages of tick changes
    Hist {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long = "w", default_value_t = 18)]
        window: u32,
        /// Series length; defaults to 2^w
        #[arg(long)]
        ticks: Option<usize>,
        #[arg(long, default_value_t = 128)]
        ma_window: usize,
        #[arg(long, default_value_t = 128)]
        stride: usize,
        #[arg(long, default_value_t = 100)]
        bins: usize,
        #[arg(long)]
        init: Option<String>,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Edge list of the history-transition graph over all k^w words
    Graph {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long = "w", default_value_t = 10)]
        window: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn initial_history(init: Option<&str>, window: u32, symbols: u32) -> Result<HistoryWord, CliError> {
    match init {
        None => Ok(init_history(window, symbols)?),
        Some(text) => {
            let word = format::parse_history(text, symbols)?;
            if word.len() != window as usize {
                return Err(CliError::usage(format!(
                    "--init has {} movements but --w is {window}",
                    word.len()
                )));
            }
            Ok(word)
        }
    }
}

fn rule_series(
    rule: &RuleArgs,
    window: u32,
    ticks: usize,
    init: Option<&str>,
    baseline: &BaselineArgs,
) -> Result<Series, CliError> {
    match baseline.seed()? {
        Some(seed) => Ok(random_walk_baseline(ticks, seed)?),
        None => {
            let spec = rule.spec()?;
            let start = initial_history(init, window, spec.symbols())?;
            Ok(generate_series(&spec, window, ticks, &start)?)
        }
    }
}

fn write_out(bytes: &[u8], output: &OutputArgs, out: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

/// Runs one subcommand. Data goes to `--out` or `out`; notes go to `diag`.
pub fn dispatch(cli: &Cli, out: &mut dyn Write, diag: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Decode { rule } => {
            out.write_all(format::decode_lines(&rule.spec()?.table()).as_bytes())?;
        }
        Command::Simulate {
            rule,
            window,
            ticks,
            init,
            baseline,
            output,
        } => {
            let series = rule_series(rule, *window, *ticks, init.as_deref(), baseline)?;
            let bytes = format::to_bytes(&format::series_records(&series), &format::SERIES_HEADER, output.format)?;
            write_out(&bytes, output, out)?;
        }
        Command::Period { rule, window, init } => {
            let spec = rule.spec()?;
            let start = initial_history(init.as_deref(), *window, spec.symbols())?;
            let r = find_cycle(&spec, *window, &start)?;
            let max = word_count(spec.symbols(), *window).unwrap_or(u128::MAX);
            writeln!(out, "period={} transient={} class={} max={max}", r.period, r.transient, r.class)?;
            if let Some(Advisory::ShortWindow { window }) = classify(r.period, spec.symbols(), *window).advisory {
                writeln!(diag, "advisory: w={window} is below 5; short cycles may classify as complex")?;
            }
        }
        Command::Table1 { rule, windows, output } => {
            let (lo, hi) = format::parse_inclusive::<u32>(windows)?;
            let rows = scan_windows(rule.rule, rule.states, rule.symbols, lo, hi)?;
            write_out(&format::catalog_bytes(&rows, output.format)?, output, out)?;
        }
        Command::Scan {
            states,
            symbols,
            window,
            rules,
            workers,
            output,
        } => {
            let range = match rules {
                Some(text) => {
                    let (lo, hi) = format::parse_inclusive::<u64>(text)?;
                    Some(lo..hi.checked_add(1).ok_or_else(|| CliError::usage("rule range overflows"))?)
                }
                None => None,
            };
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            if workers == 0 {
                return Err(CliError::usage("--workers must be at least 1"));
            }
            let rows = scan_rules_parallel(*states, *symbols, *window, range, workers)?;
            write_out(&format::catalog_bytes(&rows, output.format)?, output, out)?;
            if let Ok(summary) = summarize_scan(&rows) {
                let dedup = summary
                    .complex_up_to_relabeling
                    .map_or_else(|| "n/a".to_string(), |n| n.to_string());
                writeln!(
                    diag,
                    "rows={} simple={} complex={} maximally_complex={} complex_total={} complex_up_to_relabeling={dedup}",
                    summary.rows,
                    summary.simple,
                    summary.complex,
                    summary.maximally_complex,
                    summary.complex_total(),
                )?;
            }
        }
        Command::Table2 {
            rule,
            window,
            ticks,
            day_lengths,
            se,
            init,
            baseline,
            output,
        } => {
            let lengths = day_lengths.clone().unwrap_or_else(default_day_lengths);
            let rows = match baseline.seed()? {
                Some(seed) => summarize_ticks(&random_walk_baseline(*ticks, seed)?.changes, &lengths, (*se).into())?,
                None => {
                    let spec = rule.spec()?;
                    let start = initial_history(init.as_deref(), *window, spec.symbols())?;
                    summary_table(&spec, *window, *ticks, &lengths, &start, (*se).into())?
                }
            };
            let bytes = format::to_bytes(&format::summary_records(&rows), &format::SUMMARY_HEADER, output.format)?;
            write_out(&bytes, output, out)?;
        }
        Command::Hist {
            rule,
            window,
            ticks,
            ma_window,
            stride,
            bins,
            init,
            baseline,
            output,
        } => {
            let ticks = match ticks {
                Some(t) => *t,
                None => 1usize
                    .checked_shl(*window)
                    .filter(|_| *window < usize::BITS)
                    .ok_or_else(|| CliError::usage("2^w ticks overflows; pass --ticks"))?,
            };
            let series = rule_series(rule, *window, ticks, init.as_deref(), baseline)?;
            let changes: Vec<f64> = series.changes.iter().map(|&c| c as f64).collect();
            let averages = moving_average(&changes, *ma_window, *stride)?;
            let hist = histogram(&averages, *bins)?;
            let bytes = format::to_bytes(&format::histogram_records(&hist), &format::HISTOGRAM_HEADER, output.format)?;
            write_out(&bytes, output, out)?;
        }
        Command::Graph { rule, window, output } => {
            let edges = transition_graph(&rule.spec()?, *window)?;
            let bytes = format::to_bytes(&format::edge_records(&edges), &format::EDGE_HEADER, output.format)?;
            write_out(&bytes, output, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<(String, String), CliError> {
        let cli = Cli::try_parse_from(std::iter::once("ifa").chain(args.iter().copied()))
            .map_err(|e| CliError::usage(e.to_string()))?;
        let (mut out, mut diag) = (Vec::new(), Vec::new());
        dispatch(&cli, &mut out, &mut diag)?;
        Ok((String::from_utf8(out).unwrap(), String::from_utf8(diag).unwrap()))
    }

    #[test]
    fn period_line() {
        let (out, _) = run(&["period", "--rule", "54", "--w", "5"]).unwrap();
        assert_eq!(out, "period=21 transient=0 class=Complex max=32\n");
    }

    #[test]
    fn short_window_advisory() {
        let (_, diag) = run(&["period", "--w", "3"]).unwrap();
        assert!(diag.starts_with("advisory: w=3"));
    }

    #[test]
    fn decode_prints_rule_list() {
        let (out, _) = run(&["decode", "--rule", "54", "--s", "2", "--k", "2"]).unwrap();
        assert_eq!(out.lines().count(), 4);
        assert!(out.starts_with("{1,1} -> {1,0}"));
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(run(&["simulate", "--seed", "3"]), Err(CliError::Usage(_))));
        assert!(matches!(run(&["simulate", "--w", "3", "--init", "UU"]), Err(CliError::Usage(_))));
        assert!(matches!(run(&["table1", "--w", "9..5"]), Err(CliError::Usage(_))));
        assert!(matches!(run(&["scan", "--workers", "0"]), Err(CliError::Usage(_))));
    }

    #[test]
    fn runtime_errors_have_kinds() {
        let e = run(&["graph", "--w", "40"]).unwrap_err();
        assert_eq!((e.kind(), e.exit_code()), ("resource_guard", 1));
        let e = run(&["decode", "--rule", "256"]).unwrap_err();
        assert_eq!(e.kind(), "rule_out_of_range");
    }

    #[test]
    fn simulate_with_init_override() {
        let (out, _) = run(&["simulate", "--w", "3", "--init", "DUU", "--ticks", "2"]).unwrap();
        // Thursday: buy; Friday: sell
        assert_eq!(out, "tick,movement,change,price\n1,1,1,1\n2,0,-1,0\n");
    }

    #[test]
    fn scan_summary_goes_to_diagnostics() {
        let (out, diag) = run(&["scan", "--w", "6", "--workers", "2"]).unwrap();
        assert_eq!(out.lines().count(), 257);
        assert!(diag.contains("complex_total=2"), "{diag}");
        assert!(diag.contains("complex_up_to_relabeling=1"), "{diag}");
    }
}
