#![no_main]

use abc_spectra::graph::graph6;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let parsed = graph6::parse_records(text);
        let read = graph6::read_records(text.as_bytes());
        match (&parsed, &read) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a, b);
                assert!(a.windows(2).all(|w| w[0].0 < w[1].0));
            }
            (Err(a), Err(b)) => assert_eq!(a.line(), b.line()),
            _ => panic!("string and reader paths disagree"),
        }
    }
});
