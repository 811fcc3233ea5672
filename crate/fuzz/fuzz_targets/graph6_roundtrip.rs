#![no_main]
use libfuzzer_sys::fuzz_target;

use homoglab::graph6::{from_graph6, to_graph6};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(graph) = from_graph6(text) {
            // accepted lines must re-encode to themselves
            let line = to_graph6(&graph);
            assert_eq!(line, text, "round trip must be the identity");
            assert_eq!(from_graph6(&line).unwrap(), graph);
        }
    }
});
