#![no_main]

use coxrig::text::parse_expr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else {
        return;
    };
    let rank = 2 + (r % 4) as usize;
    let Ok(s) = std::str::from_utf8(rest) else {
        return;
    };
    // Long expressions can blow up word lengths; the parser itself is what is under test.
    if s.len() > 256 {
        return;
    }
    if let Ok(a) = parse_expr(s, rank) {
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(parse_expr(&a.trace_string(), rank).unwrap(), a);
    }
});
