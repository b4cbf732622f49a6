#![no_main]

use abc_spectra::graph::Family;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(family) = text.parse::<Family>() {
            if let Ok(graphs) = family.graphs() {
                assert!(graphs.iter().all(|g| g.is_connected() && g.order() <= 64));
            }
        }
    }
});
