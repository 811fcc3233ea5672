#![no_main]
use libfuzzer_sys::fuzz_target;

use homoglab::families::{gen_catalog, CatalogEntry};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(entry) = text.parse::<CatalogEntry>() {
            // display must round-trip and generation must stay in bounds
            let again: CatalogEntry = entry.to_string().parse().unwrap();
            assert_eq!(entry, again);
            if entry.vertex_count() <= 64 {
                let g = gen_catalog(entry);
                assert_eq!(g.n(), entry.vertex_count());
            }
        }
    }
});
