#![no_main]

use lfactor_core::parse::parse_chi_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(chi) = parse_chi_spec(text) {
        assert!(chi.conductor() <= chi.modulus());
        assert_eq!(chi.modulus() % chi.conductor(), 0);
        assert_eq!(parse_chi_spec(&chi.label()).unwrap(), chi);
    }
});
