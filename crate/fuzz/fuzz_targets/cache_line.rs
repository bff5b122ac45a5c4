#![no_main]

use libfuzzer_sys::fuzz_target;
use tiered_tutte::tutte::parse_cache_line;
use tiered_tutte::TutteEngine;

fuzz_target!(|data: &str| {
    let _ = parse_cache_line(data);
    let _ = TutteEngine::new().load_cache(data.as_bytes());
});
