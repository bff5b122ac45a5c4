#![no_main]

use libfuzzer_sys::fuzz_target;
use tiered_tutte::io::parse_edge_ids;

fuzz_target!(|data: &str| {
    let _ = parse_edge_ids(data);
});
