#![no_main]

use libfuzzer_sys::fuzz_target;
use qfock::wedge::WedgeVector;

fuzz_target!(|data: &[u8]| {
    if let Ok(w) = serde_json::from_slice::<WedgeVector>(data) {
        // every accepted index sequence is normally ordered
        for (ks, c) in w.terms() {
            assert!(ks.windows(2).all(|p| p[0] > p[1]));
            assert!(!c.is_zero());
        }
        let text = serde_json::to_string(&w).expect("serializes");
        let back: WedgeVector = serde_json::from_str(&text).expect("round trip parses");
        assert_eq!(w, back);
    }
});
