#![no_main]

use libfuzzer_sys::fuzz_target;

use bdiff::config::{parse_config_text, Config};

// The key=value config format must reject garbage gracefully.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut cfg = Config::default();
    let _ = parse_config_text(text, &mut cfg);
});
