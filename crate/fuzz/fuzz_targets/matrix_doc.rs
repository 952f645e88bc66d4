#![no_main]

use libfuzzer_sys::fuzz_target;
use ruled_locus::doc::{matrix_from_json, matrix_to_json, parse_json, to_canonical_string};
use ruled_locus::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_json(text) else { return };
    if let Ok(m) = matrix_from_json(&v, Field::Rational) {
        let once = to_canonical_string(&matrix_to_json(&m));
        let back = matrix_from_json(&parse_json(&once).unwrap(), Field::Rational).unwrap();
        assert_eq!(back.to_rows(), m.to_rows());
        assert_eq!(back.rank(), m.rank());
    }
});
