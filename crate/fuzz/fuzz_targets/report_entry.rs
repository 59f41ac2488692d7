#![no_main]

use lfactor_core::parse::{parse_report_entry, parse_report_spec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_report_entry(text);
    let _ = parse_report_spec(text);
});
