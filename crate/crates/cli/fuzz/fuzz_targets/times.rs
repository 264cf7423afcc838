#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(times) = bathent_cli::inputs::parse_times(src) {
            assert!(times.iter().all(|t| t.is_finite() && *t >= 0.0));
        }
    }
});
