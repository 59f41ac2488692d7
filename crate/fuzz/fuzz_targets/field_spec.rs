#![no_main]

use lfactor_core::parse::parse_field_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(field) = parse_field_spec(text) {
        let chars = field.characters();
        assert_eq!(chars.len() as u64, field.degree());
        assert!(chars.iter().any(|c| c.is_trivial()));
        let json = serde_json::to_string(&field).unwrap();
        assert_eq!(parse_field_spec(&json).unwrap(), field);
    }
});
