#![no_main]

use libfuzzer_sys::fuzz_target;
use moyal_core::io::parse_model;

fuzz_target!(|data: &str| {
    if let Ok(m) = parse_model(data) {
        let again = parse_model(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(again, m);
    }
});
