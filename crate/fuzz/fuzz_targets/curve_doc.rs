#![no_main]

use libfuzzer_sys::fuzz_target;
use ruled_locus::doc::{curve_from_json, curve_to_json, parse_json, to_canonical_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_json(text) else { return };
    if let Ok(g) = curve_from_json(&v) {
        let once = to_canonical_string(&curve_to_json(&g));
        let back = curve_from_json(&parse_json(&once).unwrap()).unwrap();
        assert!(g.is_zero() && back.is_zero() || back.proportional(&g).is_some());
        assert_eq!(to_canonical_string(&curve_to_json(&back)), once);
    }
});
