#![no_main]

use libfuzzer_sys::fuzz_target;
use tiered_tutte::io::{graph_to_json, parse_graph, parse_tiered, tiered_to_json};

fuzz_target!(|data: &str| {
    if let Ok(doc) = parse_graph(data) {
        // whatever decodes must re-encode to the same graph
        let again = parse_graph(&graph_to_json(&doc.graph)).expect("re-encoded graph parses");
        assert_eq!(again.graph, doc.graph);
    }
    if let Ok(g) = parse_tiered(data) {
        assert_eq!(
            parse_tiered(&tiered_to_json(&g)).expect("re-encoded tiers parse"),
            g
        );
    }
});
