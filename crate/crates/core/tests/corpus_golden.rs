//! Generated corpus series compared against frozen 2048-term files.

use mahler_core::automatic::Dfao;
use mahler_core::corpus::{standard_series, thue_morse_dfao, zagier_series, ZagierConvention};
use mahler_core::{Rationals, Series};

const TERMS: usize = 2048;

fn golden(name: &str) -> Vec<String> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines().map(str::to_owned).collect()
}

fn as_strings(s: &Series<Rationals>) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

fn dfao_strings(d: &Dfao) -> Vec<String> {
    d.terms(TERMS).iter().map(|v| v.to_string()).collect()
}

#[test]
fn standard_series_match_golden() {
    for (file, name, param) in [
        ("power_indicator_2.txt", "power-indicator", "2"),
        ("power_indicator_3.txt", "power-indicator", "3"),
        ("geometric_3.txt", "geometric", "3"),
        ("nu2_central_binomial_squared.txt", "nu-p-central-binomial-squared", "2"),
        ("nu3_central_binomial_squared.txt", "nu-p-central-binomial-squared", "3"),
    ] {
        let s = standard_series(name, param, TERMS).unwrap();
        assert_eq!(as_strings(&s), golden(file), "{file}");
    }
}

#[test]
fn zagier_sequences_match_golden() {
    assert_eq!(as_strings(&zagier_series(TERMS, ZagierConvention::SumToN)), golden("zagier_n.txt"));
    assert_eq!(as_strings(&zagier_series(TERMS, ZagierConvention::SumToNMinus1)), golden("zagier_n_minus_1.txt"));
}

#[test]
fn thue_morse_matches_golden() {
    assert_eq!(dfao_strings(&thue_morse_dfao()), golden("thue_morse.txt"));
}

#[test]
fn generation_is_reproducible() {
    let a = standard_series("nu-p", "3", 500).unwrap();
    let b = standard_series("nu-p", "3", 500).unwrap();
    assert_eq!(a, b);
}
