#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(name) = std::str::from_utf8(data) else { return };
    if let Ok(psi) = orlicz::OrliczFunction::from_name(name) {
        // accepted names must round-trip and evaluate cleanly
        let again = orlicz::OrliczFunction::from_name(psi.label()).expect("label re-parses");
        assert_eq!(psi.label(), again.label());
        let v = psi.eval(2.0).expect("finite argument");
        assert!(!v.is_nan());
        if v.is_finite() && v > 0.0 {
            let back = psi.inverse(v).expect("inverse on the range");
            assert!((back - 2.0).abs() <= 1e-8 * 2.0, "inverse(eval(2)) = {back}");
        }
    }
});
