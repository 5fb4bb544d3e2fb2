#![no_main]

use combined_matrix::Matrix;
use libfuzzer_sys::fuzz_target;

// Auto-detected format, then the downstream exact operations on small inputs.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(m) = Matrix::parse(s) else { return };
    assert_eq!(Matrix::parse(&m.to_json()).unwrap(), m);
    if m.rows() == m.cols() && m.rows() <= 4 {
        if let Ok(c) = combined_matrix::combined(&m) {
            let ones = vec![combined_matrix::Rational::one(); m.rows()];
            assert_eq!(c.combined.row_sums(), ones);
        }
    }
});
