#![no_main]

use libfuzzer_sys::fuzz_target;
use tiered_tutte::OrderedPartition;

fuzz_target!(|data: &str| {
    if let Ok(p) = data.parse::<OrderedPartition>() {
        assert_eq!(p.to_string().parse::<OrderedPartition>().unwrap(), p);
    }
});
