#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(sample) = orlicz::measure::BoundarySample::read_csv(data) {
        assert!(sample.n().is_power_of_two() && sample.n() >= 2);
        let mut buf = Vec::new();
        sample.write_csv(&mut buf).expect("write to memory");
        let back = orlicz::measure::BoundarySample::read_csv(buf.as_slice()).expect("own output re-parses");
        assert_eq!(back.n(), sample.n());
    }
});
