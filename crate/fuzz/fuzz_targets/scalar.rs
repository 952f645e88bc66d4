#![no_main]

use libfuzzer_sys::fuzz_target;
use ruled_locus::doc::parse_field_flag;
use ruled_locus::{Field, Scalar};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_field_flag(text);
    for field in [Field::Rational, Field::Prime { p: 10007 }] {
        if let Ok(x) = Scalar::parse(field, text) {
            let s = x.to_canonical_string();
            assert_eq!(Scalar::parse(field, &s).unwrap(), x);
        }
    }
});
