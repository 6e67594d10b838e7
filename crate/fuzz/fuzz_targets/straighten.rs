#![no_main]

use libfuzzer_sys::fuzz_target;
use qfock::scalar::ParameterSet;
use qfock::wedge::{normal_order_with, RewriteStrategy};

// first byte picks the color count, the rest become wedge indices;
// straightening must terminate, produce a normally ordered result, and not
// depend on the pair-selection strategy
fuzz_target!(|data: &[u8]| {
    if data.len() < 2 || data.len() > 8 {
        return;
    }
    let ncolors = 2 + (data[0] % 3) as usize;
    let ks: Vec<i64> = data[1..].iter().map(|&b| b as i64 % 16 - 8).collect();
    let params = ParameterSet::standard();
    let left = normal_order_with(&params, &ks, ncolors, RewriteStrategy::Leftmost);
    let right = normal_order_with(&params, &ks, ncolors, RewriteStrategy::Rightmost);
    assert_eq!(left, right);
    for (out, _) in left.terms() {
        assert!(out.windows(2).all(|p| p[0] > p[1]));
    }
});
