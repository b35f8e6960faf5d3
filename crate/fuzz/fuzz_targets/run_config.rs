#![no_main]
use bunpic::{load_family, load_group, RunConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for line in text.lines().take(8) {
        let Ok(cfg) = RunConfig::from_json_line(line) else { continue };
        // File references would let the fuzzer read arbitrary paths.
        if line.contains('@') || line.len() > 200 {
            continue;
        }
        let _ = load_group(&cfg.group);
        if let Some(f) = &cfg.family {
            let _ = load_family(f);
        }
    }
});
