#![no_main]

use entrocone::notation::parse_ray_notation;
use libfuzzer_sys::fuzz_target;

// First byte picks the party count, the rest is the ray text.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(v) = parse_ray_notation(1 + n as usize % 8, text) {
        assert!(v.entries().iter().all(|x| x.is_integer()));
    }
});
