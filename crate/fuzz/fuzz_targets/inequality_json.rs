#![no_main]

use entrocone::io::{inequality_json, parse_inequality};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_inequality(text) {
        assert_eq!(parse_inequality(&inequality_json(&q)).unwrap(), q);
    }
});
