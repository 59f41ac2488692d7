#![no_main]

use lfactor_core::dirichlet::DirichletCharacter;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(chi) = serde_json::from_slice::<DirichletCharacter>(data) {
        let json = serde_json::to_string(&chi).unwrap();
        assert_eq!(serde_json::from_str::<DirichletCharacter>(&json).unwrap(), chi);
    }
});
