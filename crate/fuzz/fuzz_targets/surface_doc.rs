#![no_main]

use libfuzzer_sys::fuzz_target;
use ruled_locus::doc::{parse_json, surface_from_json, surface_to_json, to_canonical_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_json(text) else { return };
    if let Ok(psi) = surface_from_json(&v) {
        let once = to_canonical_string(&surface_to_json(&psi));
        let back = surface_from_json(&parse_json(&once).unwrap()).unwrap();
        assert_eq!(back, psi);
        assert_eq!(to_canonical_string(&surface_to_json(&back)), once);
    }
});
