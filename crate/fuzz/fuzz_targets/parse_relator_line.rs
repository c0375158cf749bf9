#![no_main]

use coxrig::gilbert::{format_symbol_word, parse_relator_line};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = parse_relator_line(s) {
            assert_eq!(parse_relator_line(&format_symbol_word(&w)).unwrap(), w);
        }
    }
});
