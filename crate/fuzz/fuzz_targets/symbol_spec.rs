#![no_main]
use libfuzzer_sys::fuzz_target;
use num_complex::Complex64;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sym) = orlicz::symbol::parse_symbol(text) {
        // accepted symbols are self-maps of the disk
        for &(re, im) in &[(0.0, 0.0), (0.3, 0.2), (-0.6, 0.5), (0.0, -0.9)] {
            let v = sym.eval(Complex64::new(re, im));
            assert!(v.re.is_finite() && v.im.is_finite());
            assert!(v.norm() <= 1.0 + 1e-9, "{}: |phi| = {}", sym.kind_name(), v.norm());
        }
        if let Some(b) = sym.boundary_value(1.2345) {
            assert!(b.norm() <= 1.0 + 1e-9);
        }
    }
});
