use std::process::Command;

use ifa::format::{self, Format, SeriesRecord};
use ifa::parallel::scan_rules_parallel;
use ifa_core::{scan_rules, scan_windows, RuleCatalogRow};
use proptest::prelude::*;

fn ifa(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ifa")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = ifa(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn period_command() {
    assert_eq!(stdout(&["period", "--rule", "54", "--w", "5"]), "period=21 transient=0 class=Complex max=32\n");
}

#[test]
fn table1_command_lists_eighteen_windows() {
    let rows = format::read_catalog(stdout(&["table1", "--rule", "54", "--w", "5..22"]).as_bytes(), Format::Csv).unwrap();
    assert_eq!(rows.len(), 18);
    assert_eq!(rows[17].period, 4_194_303);
}

#[test]
fn decode_command() {
    assert_eq!(
        stdout(&["decode", "--rule", "54", "--s", "2", "--k", "2"]),
        "{1,1} -> {1,0}\n{1,0} -> {2,1}\n{2,1} -> {1,1}\n{2,0} -> {2,0}\n"
    );
}

#[test]
fn exit_codes() {
    let unknown = ifa(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));
    assert_eq!(ifa(&["period", "--bogus-flag"]).status.code(), Some(2));
    assert_eq!(ifa(&["simulate", "--seed", "1"]).status.code(), Some(2));

    let guard = ifa(&["graph", "--w", "33"]);
    assert_eq!(guard.status.code(), Some(1));
    let line = String::from_utf8(guard.stderr).unwrap();
    assert_eq!(line.lines().count(), 1);
    assert!(line.starts_with("error: kind=resource_guard message="), "{line}");

    assert_eq!(ifa(&["decode", "--rule", "256"]).status.code(), Some(1));
}

#[test]
fn simulate_csv_layout() {
    let text = stdout(&["simulate", "--rule", "54", "--w", "6", "--ticks", "63"]);
    let rows: Vec<SeriesRecord> = format::from_bytes(text.as_bytes(), Format::Csv).unwrap();
    assert_eq!(rows.len(), 63);
    assert_eq!(rows[0].tick, 1);
    assert_eq!(rows.last().unwrap().price, 1);
    assert!(rows.windows(2).all(|p| p[1].price - p[0].price == p[1].change));
}

#[test]
fn graph_edge_list() {
    let text = stdout(&["graph", "--rule", "54", "--w", "5"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("from_word,to_word,emitted_symbol"));
    assert_eq!(lines.count(), 32);
}

#[test]
fn hist_has_one_hundred_bins() {
    let text = stdout(&["hist", "--rule", "54", "--w", "14"]);
    let rows: Vec<format::HistogramRecord> = format::from_bytes(text.as_bytes(), Format::Csv).unwrap();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows.iter().map(|r| r.count).sum::<u64>(), 128);
}

#[test]
fn write_catalog_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    let n = format::write_catalog(&[], Format::Csv, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "s,k,w,rule,period,transient,class,pct_of_max\n");
    assert_eq!(n, 45);

    let rows = scan_windows(54, 2, 2, 5, 5).unwrap();
    let path = dir.path().join("one.csv");
    format::write_catalog(&rows, Format::Csv, &path).unwrap();
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "s,k,w,rule,period,transient,class,pct_of_max\n2,2,5,54,21,0,Complex,0.65625\n"
    );

    let missing = dir.path().join("no/such/dir/out.csv");
    assert!(format::write_catalog(&rows, Format::Csv, &missing).is_err());
}

#[test]
fn catalog_json_round_trip() {
    let rows = scan_rules(3, 2, 7, Some(4000..4300)).unwrap();
    for fmt in [Format::Json, Format::Csv] {
        let bytes = format::catalog_bytes(&rows, fmt).unwrap();
        assert_eq!(bytes.last(), Some(&b'\n'));
        assert_eq!(format::read_catalog(&bytes, fmt).unwrap(), rows);
    }
}

#[test]
fn partitioned_scans_are_byte_identical() {
    let single = format::catalog_bytes(&scan_rules_parallel(3, 2, 8, None, 1).unwrap(), Format::Csv).unwrap();
    for workers in [2, 8] {
        let split = format::catalog_bytes(&scan_rules_parallel(3, 2, 8, None, workers).unwrap(), Format::Csv).unwrap();
        assert_eq!(single, split, "workers={workers}");
    }
    let cli_1 = stdout(&["scan", "--s", "2", "--w", "9", "--workers", "1"]);
    let cli_8 = stdout(&["scan", "--s", "2", "--w", "9", "--workers", "8"]);
    assert_eq!(cli_1, cli_8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalog_numbers_reparse_exactly(
        period in 1u64..(1 << 40),
        transient in 0u64..(1 << 40),
        rule in any::<u64>(),
        w in 1u32..60,
    ) {
        let row = RuleCatalogRow {
            s: 2,
            k: 2,
            w,
            rule,
            period,
            transient,
            class: ifa_core::classify(period, 2, w).class,
            pct_of_max: period as f64 / (2f64).powi(w as i32),
        };
        for fmt in [Format::Csv, Format::Json] {
            let bytes = format::catalog_bytes(&[row], fmt).unwrap();
            prop_assert_eq!(format::read_catalog(&bytes, fmt).unwrap(), vec![row]);
        }
    }
}
