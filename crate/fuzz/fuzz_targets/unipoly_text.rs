#![no_main]

use libfuzzer_sys::fuzz_target;
use tiered_tutte::UniPoly;

fuzz_target!(|data: &str| {
    if let Ok(p) = UniPoly::parse_in(data, "q") {
        assert_eq!(UniPoly::parse_in(&p.render("q"), "q").unwrap(), p);
    }
});
