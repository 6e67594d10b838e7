#![no_main]

use libfuzzer_sys::fuzz_target;
use std::str::FromStr;

fuzz_target!(|data: &[u8]| {
    let input = String::from_utf8_lossy(data);
    // the parser must never panic, and accepted values must round-trip
    // through the canonical "numerator/denominator" form
    if let Ok(v) = qfock::Scalar::from_str(&input) {
        let back = qfock::Scalar::from_str(&v.to_string()).expect("canonical form parses");
        assert_eq!(v, back);
    }
});
