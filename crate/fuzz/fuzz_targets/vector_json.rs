#![no_main]

use entrocone::io::{parse_vector, vector_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_vector(text) {
        assert_eq!(parse_vector(&vector_json(&v)).unwrap(), v);
    }
});
