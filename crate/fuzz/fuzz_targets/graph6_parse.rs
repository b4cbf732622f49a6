#![no_main]

use abc_spectra::graph::graph6;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // a decoded graph must survive a round trip through the encoder
    if let Ok(g) = graph6::parse_bytes(data) {
        let text = graph6::encode(&g).expect("parsed graphs are encodable");
        assert_eq!(graph6::parse(&text).expect("encoder output parses"), g);
    }
});
