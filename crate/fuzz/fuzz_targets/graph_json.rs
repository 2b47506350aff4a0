#![no_main]

use entrocone::io::{graph_json, parse_graph};
use entrocone::Backend;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_graph(text) else {
        return;
    };
    assert_eq!(parse_graph(&graph_json(&g)).unwrap(), g);
    if g.parties() <= 4 && g.vertices().len() <= 12 {
        let flow = g.entropy_vector(Backend::Flow).unwrap();
        if let Ok(en) = g.entropy_vector(Backend::Enumeration { max_states: 1 << 12 }) {
            assert_eq!(flow, en);
        }
    }
});
