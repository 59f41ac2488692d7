#![no_main]

use lfactor_core::exact::CycloElem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(e) = serde_json::from_slice::<CycloElem>(data) {
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<CycloElem>(&json).unwrap(), e);
        assert!(e.sub(&e).unwrap().is_zero());
    }
});
