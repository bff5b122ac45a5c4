#![no_main]

use libfuzzer_sys::fuzz_target;
use tiered_tutte::{BiPoly, UniPoly};

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = serde_json::from_slice::<UniPoly>(data) {
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<UniPoly>(&text).unwrap(), p);
    }
    if let Ok(p) = serde_json::from_slice::<BiPoly>(data) {
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<BiPoly>(&text).unwrap(), p);
    }
});
