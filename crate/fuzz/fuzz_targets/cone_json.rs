#![no_main]

use entrocone::io::{parse_cone, to_pretty, ConeFile};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cone) = parse_cone(text) {
        let again = parse_cone(&to_pretty(&ConeFile::from_cone(&cone, true, true))).unwrap();
        assert_eq!(again.rays(), cone.rays());
    }
});
