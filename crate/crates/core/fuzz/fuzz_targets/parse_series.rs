#![no_main]

use libfuzzer_sys::fuzz_target;
use moyal_core::io::parse_json;
use moyal_core::{CouplingSeries, GaussianRational};

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_json::<CouplingSeries<GaussianRational>>(data) {
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(parse_json::<CouplingSeries<GaussianRational>>(&json).unwrap(), s);
    }
});
