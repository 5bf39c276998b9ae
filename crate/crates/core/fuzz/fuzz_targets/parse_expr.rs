#![no_main]

use libfuzzer_sys::fuzz_target;
use moyal_core::io::{latex_poly, parse_candidate, parse_poly};
use moyal_core::metric::MetricCandidate;

fuzz_target!(|data: &str| {
    if let Ok(p) = parse_poly(data) {
        let _ = latex_poly(&p);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<moyal_core::PhasePoly<_>>(&json).unwrap(), p);
    }
    if let Ok(MetricCandidate::ExpQuad(e)) = parse_candidate(data) {
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<moyal_core::star::ExpQuadForm<_>>(&json).unwrap(), e);
    }
});
