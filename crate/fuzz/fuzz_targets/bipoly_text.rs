#![no_main]

use libfuzzer_sys::fuzz_target;
use tiered_tutte::BiPoly;

fuzz_target!(|data: &str| {
    if let Ok(p) = data.parse::<BiPoly>() {
        assert_eq!(p.render().parse::<BiPoly>().unwrap(), p);
    }
});
