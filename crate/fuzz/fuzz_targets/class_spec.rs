#![no_main]

use abc_spectra::enumerate::{read_class, ClassName, GraphClassSpec, OrderRange};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (head, body) = text.split_once('\n').unwrap_or((text, ""));
    let _ = head.parse::<ClassName>();
    if let Ok(range) = head.parse::<OrderRange>() {
        assert!(range.iter().all(|n| n >= range.start && n <= range.end));
    }
    // the body is ingested as a catalog of order-6 trees
    let spec = GraphClassSpec::trees(6);
    if let Ok(class) = read_class(body.as_bytes(), &spec) {
        assert!(class.graphs.iter().all(|g| spec.matches(g)));
    }
});
