#![no_main]

use libfuzzer_sys::fuzz_target;
use qfock::laurent::LaurentPoly;

fuzz_target!(|data: &[u8]| {
    if let Ok(poly) = serde_json::from_slice::<LaurentPoly>(data) {
        // accepted input must serialize and re-parse to an equal value
        let text = serde_json::to_string(&poly).expect("serializes");
        let back: LaurentPoly = serde_json::from_str(&text).expect("round trip parses");
        assert_eq!(poly, back);
        // canonical form: no stored zero coefficients
        assert!(poly.terms().all(|(_, c)| !c.is_zero()));
    }
});
