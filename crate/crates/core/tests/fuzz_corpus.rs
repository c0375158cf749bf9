//! Replays the checked-in fuzz seeds through the same round-trip checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use coxrig::gilbert::{format_symbol_word, parse_relator_line};
use coxrig::text::{parse_expr, parse_word};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<Vec<u8>> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn word_seeds_round_trip() {
    for data in seeds("parse_word") {
        let rank = 1 + (data[0] % 8) as usize;
        let s = std::str::from_utf8(&data[1..]).unwrap();
        let w = parse_word(s, rank).unwrap();
        assert!(w.letters().windows(2).all(|p| p[0] != p[1]));
        assert_eq!(parse_word(&w.to_string(), rank).unwrap(), w);
    }
}

#[test]
fn expr_seeds_round_trip() {
    for data in seeds("parse_aut_expr") {
        let rank = 2 + (data[0] % 4) as usize;
        let s = std::str::from_utf8(&data[1..]).unwrap();
        let a = parse_expr(s, rank).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(parse_expr(&a.trace_string(), rank).unwrap(), a);
    }
}

#[test]
fn relator_seeds_round_trip() {
    for data in seeds("parse_relator_line") {
        let s = std::str::from_utf8(&data).unwrap();
        let w = parse_relator_line(s).unwrap_or_else(|e| panic!("{s:?}: {e}"));
        assert_eq!(parse_relator_line(&format_symbol_word(&w)).unwrap(), w);
    }
}
