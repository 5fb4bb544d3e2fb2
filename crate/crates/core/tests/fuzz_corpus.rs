//! Replays the checked-in fuzz corpus seeds through the same round-trip
//! properties the fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use combined_matrix::harness::DimRange;
use combined_matrix::{Matrix, Rational};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn rational_seeds() {
    let mut accepted = 0;
    for s in seeds("parse_rational") {
        if let Ok(r) = s.parse::<Rational>() {
            assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn matrix_text_seeds() {
    for s in seeds("parse_matrix_text") {
        if let Ok(m) = Matrix::parse_text(&s) {
            assert_eq!(Matrix::parse_text(&m.to_text()).unwrap(), m);
        }
    }
}

#[test]
fn matrix_json_seeds() {
    for s in seeds("parse_matrix_json") {
        if let Ok(m) = Matrix::parse_json(&s) {
            assert_eq!(Matrix::parse_json(&m.to_json()).unwrap(), m);
        }
    }
}

#[test]
fn matrix_auto_seeds() {
    for s in seeds("parse_matrix") {
        let m = Matrix::parse(&s).unwrap();
        assert_eq!(Matrix::parse(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn dim_range_seeds() {
    for s in seeds("dim_range") {
        if let Ok(DimRange(r)) = s.parse::<DimRange>() {
            assert!(r.start() <= r.end());
        }
    }
}
