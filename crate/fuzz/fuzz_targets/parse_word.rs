#![no_main]

use coxrig::text::parse_word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else {
        return;
    };
    let rank = 1 + (r % 8) as usize;
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(w) = parse_word(s, rank) {
            assert!(w.letters().windows(2).all(|p| p[0] != p[1]));
            assert_eq!(parse_word(&w.to_string(), rank).unwrap(), w);
        }
    }
});
