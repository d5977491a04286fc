#![no_main]
use libfuzzer_sys::fuzz_target;
use orlicz::growth::GrowthCondition;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cond) = text.parse::<GrowthCondition>() {
        let again: GrowthCondition = cond.name().parse().expect("name re-parses");
        assert_eq!(cond, again);
        assert!(!cond.default_witness_scan().is_empty());
    }
});
