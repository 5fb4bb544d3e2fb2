#![no_main]

use combined_matrix::Matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = Matrix::parse_text(s) {
        assert_eq!(Matrix::parse_text(&m.to_text()).unwrap(), m);
    }
});
