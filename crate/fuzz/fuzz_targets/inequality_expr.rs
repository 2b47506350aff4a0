#![no_main]

use entrocone::notation::parse_inequality_expr;
use libfuzzer_sys::fuzz_target;

// First byte picks the party count, the rest is the expression.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let _ = parse_inequality_expr(1 + n as usize % 8, text);
});
