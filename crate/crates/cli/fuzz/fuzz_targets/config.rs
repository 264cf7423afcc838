#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(cfg) = bathent_cli::config::parse_config(src) {
            let _ = cfg.kossakowski(false, 1e-10);
            let _ = cfg.kossakowski(true, 1e-10);
        }
    }
});
