#![no_main]
use bunpic_core::family::{parse_family, validate_family, CurveFamily};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_family(text) {
        let _ = validate_family(&f);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(CurveFamily::from_json(&json).unwrap(), f);
    }
});
