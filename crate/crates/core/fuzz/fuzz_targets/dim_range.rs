#![no_main]

use combined_matrix::harness::DimRange;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(DimRange(r)) = s.parse::<DimRange>() {
        assert!(r.start() <= r.end());
    }
});
