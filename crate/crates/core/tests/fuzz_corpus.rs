//! Replays the checked-in fuzz seeds through the same round-trip checks as the fuzz targets.

use std::path::PathBuf;

use ruled_locus::doc::*;
use ruled_locus::{Field, Scalar};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| String::from_utf8_lossy(&std::fs::read(e.unwrap().path()).unwrap()).into_owned())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn surface_seeds() {
    let mut parsed = 0;
    for text in seeds("surface_doc") {
        let Ok(v) = parse_json(&text) else { continue };
        if let Ok(psi) = surface_from_json(&v) {
            parsed += 1;
            let once = to_canonical_string(&surface_to_json(&psi));
            let back = surface_from_json(&parse_json(&once).unwrap()).unwrap();
            assert_eq!(back, psi);
            assert_eq!(to_canonical_string(&surface_to_json(&back)), once);
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn curve_seeds() {
    for text in seeds("curve_doc") {
        let Ok(v) = parse_json(&text) else { continue };
        if let Ok(g) = curve_from_json(&v) {
            let once = to_canonical_string(&curve_to_json(&g));
            let back = curve_from_json(&parse_json(&once).unwrap()).unwrap();
            assert!(back.proportional(&g).is_some());
            assert_eq!(to_canonical_string(&curve_to_json(&back)), once);
        }
    }
}

#[test]
fn extension_seeds() {
    for text in seeds("extension_doc") {
        let Ok(v) = parse_json(&text) else { continue };
        if let Ok(e) = extension_from_json(&v) {
            let once = to_canonical_string(&extension_to_json(&e));
            assert_eq!(extension_from_json(&parse_json(&once).unwrap()).unwrap(), e);
        }
    }
}

#[test]
fn matrix_seeds() {
    for text in seeds("matrix_doc") {
        let Ok(v) = parse_json(&text) else { continue };
        if let Ok(m) = matrix_from_json(&v, Field::Rational) {
            let once = to_canonical_string(&matrix_to_json(&m));
            let back = matrix_from_json(&parse_json(&once).unwrap(), Field::Rational).unwrap();
            assert_eq!(back.to_rows(), m.to_rows());
        }
    }
}

#[test]
fn scalar_seeds() {
    for text in seeds("scalar") {
        let _ = parse_field_flag(&text);
        for field in [Field::Rational, Field::Prime { p: 10007 }] {
            if let Ok(x) = Scalar::parse(field, &text) {
                assert_eq!(Scalar::parse(field, &x.to_canonical_string()).unwrap(), x);
            }
        }
    }
}
