use ifa_core::stats::{aggregate_days, random_walk_baseline, Moments, SeriesStats, StandardErrorForm};
use ifa_core::*;

/// Skewness and excess kurtosis of integer data from exact power sums.
///
/// With `S_j = Σ x^j`, the scaled central moments `n^j m_j` are integer
/// polynomials in the `S_j`, so only the final division is rounded.
fn exact_moments(xs: &[i64]) -> (f64, f64) {
    let n = xs.len() as i128;
    let (mut s1, mut s2, mut s3, mut s4) = (0i128, 0i128, 0i128, 0i128);
    for &x in xs {
        let x = x as i128;
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
    }
    let c2 = n * s2 - s1 * s1; // n^2 m2
    let c3 = n * n * s3 - 3 * n * s1 * s2 + 2 * s1 * s1 * s1; // n^3 m3
    let c4 = n * n * n * s4 - 4 * n * n * s1 * s3 + 6 * n * s1 * s1 * s2 - 3 * s1 * s1 * s1 * s1; // n^4 m4
    let c2 = c2 as f64;
    let skew = (c3 as f64) / (c2 * c2.sqrt());
    let kurt = (c4 as f64) / (c2 * c2) - 3.0;
    (skew, kurt)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn two_pass_moments_agree_with_exact_power_sums() {
    let spec = RuleSpec::binary(54).unwrap();
    for (w, len) in [(12u32, 16usize), (14, 64), (17, 8)] {
        let s = generate_series(&spec, w, 100_000 - 100_000 % len, &init_history(w, 2).unwrap()).unwrap();
        let days = aggregate_days(&s.changes, len, false).unwrap();
        let m = Moments::of(&days.iter().map(|&d| d as f64).collect::<Vec<_>>()).unwrap();
        let (skew, kurt) = exact_moments(&days);
        assert!(rel_close(m.skewness, skew, 1e-9), "{} vs {}", m.skewness, skew);
        assert!(rel_close(m.excess_kurtosis, kurt, 1e-9), "{} vs {}", m.excess_kurtosis, kurt);
    }

    let walk = random_walk_baseline(100_000, 3).unwrap();
    let days = aggregate_days(&walk.changes, 10, false).unwrap();
    let m = SeriesStats::of(&days, StandardErrorForm::Literal).unwrap();
    let (skew, kurt) = exact_moments(&days);
    assert!(rel_close(m.skewness, skew, 1e-9));
    assert!(rel_close(m.excess_kurtosis, kurt, 1e-9));
}

#[test]
fn exact_oracle_sanity() {
    // two-point symmetric sample
    let (s, k) = exact_moments(&[-1, 1, -1, 1]);
    assert_eq!((s, k), (0.0, -2.0));
}

#[test]
fn random_walk_is_near_normal_at_4096_ticks_per_day() {
    let walk = random_walk_baseline(1 << 22, 2024).unwrap();
    let days = aggregate_days(&walk.changes, 4096, false).unwrap();
    assert_eq!(days.len(), 1024);
    assert_eq!(days.iter().sum::<i64>(), walk.changes.iter().sum::<i64>());
    let stats = SeriesStats::of(&days, StandardErrorForm::Conventional).unwrap();
    assert!(stats.skewness.abs() < 5.0 * stats.se_skew, "{stats:?}");
    assert!(stats.excess_kurtosis.abs() < 5.0 * stats.se_kurt, "{stats:?}");
}
