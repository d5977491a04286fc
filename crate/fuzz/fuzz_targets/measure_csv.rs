#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(mu) = orlicz::measure::EmpiricalMeasure::read_csv(data) {
        // round-trip: serialize and parse again
        let mut buf = Vec::new();
        mu.write_csv(&mut buf).expect("write to memory");
        let back = orlicz::measure::EmpiricalMeasure::read_csv(buf.as_slice()).expect("own output re-parses");
        assert_eq!(back.len(), mu.len());
        let a = mu.total_mass();
        let b = back.total_mass();
        assert!(a == b || (a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
});
