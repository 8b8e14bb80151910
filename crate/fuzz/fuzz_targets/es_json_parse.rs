#![no_main]

use libfuzzer_sys::fuzz_target;

use bdiff::script::{parse_json, render_json};

// Arbitrary bytes must never panic the script parser; anything it accepts
// must re-render to a stable fixed point.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(es) = parse_json(text) {
        let rendered = render_json(&es);
        let reparsed = parse_json(&rendered).expect("rendered script must parse");
        assert_eq!(render_json(&reparsed), rendered);
    }
});
