#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // must never panic; structured errors are fine
        let _ = homoglab::graph6::from_graph6(text);
    }
});
