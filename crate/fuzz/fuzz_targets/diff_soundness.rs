#![no_main]

use libfuzzer_sys::fuzz_target;

use bdiff::es_builder::apply_es;
use bdiff::line::split_lines;
use bdiff::{BaseAlgorithm, Config};

// Input layout: one flag byte, then left and right file bodies separated
// by the first 0xFF byte. Replaying the computed script must reproduce
// the right version exactly; any divergence or panic is a finding.
fuzz_target!(|data: &[u8]| {
    let Some((&flags, rest)) = data.split_first() else {
        return;
    };
    let split = rest.iter().position(|&b| b == 0xFF).unwrap_or(rest.len());
    let left_text = String::from_utf8_lossy(&rest[..split]).into_owned();
    let right_text =
        String::from_utf8_lossy(&rest[split.min(rest.len())..].get(1..).unwrap_or(&[]))
            .into_owned();
    if left_text.len() > 1 << 14 || right_text.len() > 1 << 14 {
        return;
    }
    let mut cfg = Config::default();
    if flags & 1 != 0 {
        cfg.base_algorithm = BaseAlgorithm::Myers;
    }
    if flags & 2 != 0 {
        cfg.tab_size = 2;
    }
    let result = bdiff::diff_lines(&left_text, &right_text, &cfg).expect("pipeline must not fail");
    result.script.validate().expect("script invariants must hold");
    let left: Vec<String> = split_lines(&left_text).into_iter().map(String::from).collect();
    let right: Vec<String> = split_lines(&right_text).into_iter().map(String::from).collect();
    let replayed = apply_es(&left, &result.script).expect("replay must succeed");
    assert_eq!(replayed, right, "replay diverged from the right version");
});
