#![no_main]

use libfuzzer_sys::fuzz_target;
use ruled_locus::doc::{extension_from_json, extension_to_json, parse_json, to_canonical_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_json(text) else { return };
    if let Ok(e) = extension_from_json(&v) {
        let once = to_canonical_string(&extension_to_json(&e));
        let back = extension_from_json(&parse_json(&once).unwrap()).unwrap();
        assert_eq!(back, e);
    }
});
