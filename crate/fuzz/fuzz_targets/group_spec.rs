#![no_main]
use bunpic_core::root_datum::{build_group, parse_group_spec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_group_spec(text) else { return };
    // Printing and reparsing is the identity.
    assert_eq!(parse_group_spec(&spec.to_string()).unwrap(), spec);
    if text.len() <= 40 {
        let _ = build_group(&spec);
    }
});
