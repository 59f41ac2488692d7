#![no_main]

use lfactor_core::special::BigFloat;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = BigFloat::parse_decimal(text, 128) {
        let printed = x.to_decimal(BigFloat::decimal_digits_for(128));
        let y = BigFloat::parse_decimal(&printed, 128).unwrap();
        assert_eq!(x.is_zero(), y.is_zero());
        assert_eq!(x.is_negative(), y.is_negative());
    }
});
