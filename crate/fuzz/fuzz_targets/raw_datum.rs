#![no_main]
use bunpic_core::root_datum::ReductiveGroupData;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = ReductiveGroupData::from_json(text) {
        let again = ReductiveGroupData::from_json(&g.to_json().to_string()).unwrap();
        assert_eq!(again.coroots(), g.coroots());
    }
});
