#![no_main]

use lfactor_core::exact::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = Rational::parse(text) {
        assert_eq!(Rational::parse(&r.to_string()).unwrap(), r);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }
});
