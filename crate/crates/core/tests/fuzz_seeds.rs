//! Replays the checked-in fuzz corpus through the same round trips the fuzz
//! targets assert, so seeds stay meaningful without cargo-fuzz installed.

use std::path::PathBuf;

use moyal_core::io::{latex_poly, parse_candidate, parse_json, parse_model, parse_poly};
use moyal_core::metric::MetricCandidate;
use moyal_core::star::ExpQuadForm;
use moyal_core::{CouplingSeries, GaussianRational as G, PhasePoly};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            (path.file_name().unwrap().to_string_lossy().into_owned(), text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn expression_seeds() {
    let mut parsed = 0;
    for (_, s) in seeds("parse_expr") {
        if let Ok(p) = parse_poly(&s) {
            parsed += 1;
            let _ = latex_poly(&p);
            let json = serde_json::to_string(&p).unwrap();
            assert_eq!(serde_json::from_str::<PhasePoly<G>>(&json).unwrap(), p);
        }
        if let Ok(MetricCandidate::ExpQuad(e)) = parse_candidate(&s) {
            parsed += 1;
            let json = serde_json::to_string(&e).unwrap();
            assert_eq!(serde_json::from_str::<ExpQuadForm<G>>(&json).unwrap(), e);
        }
    }
    assert!(parsed >= 6);
}

#[test]
fn model_seeds() {
    let mut valid = Vec::new();
    for (name, s) in seeds("parse_model") {
        if let Ok(m) = parse_model(&s) {
            assert_eq!(parse_model(&serde_json::to_string(&m).unwrap()).unwrap(), m);
            valid.push(name);
        }
    }
    assert_eq!(valid, ["empty.json", "ix3.json", "quadratic.json", "shifted.json"]);
}

#[test]
fn series_seeds() {
    for (name, s) in seeds("parse_series") {
        match parse_json::<CouplingSeries<G>>(&s) {
            Ok(series) => {
                let json = serde_json::to_string(&series).unwrap();
                assert_eq!(parse_json::<CouplingSeries<G>>(&json).unwrap(), series);
            }
            Err(_) => assert_eq!(name, "short.json"),
        }
    }
}
