//! Replays the fuzz corpus seeds through the decoders so they stay valid.

use std::fs;
use std::path::PathBuf;

use tiered_tutte::io::{parse_edge_ids, parse_graph, parse_tiered, tiered_to_json};
use tiered_tutte::tutte::parse_cache_line;
use tiered_tutte::{BiPoly, OrderedPartition, UniPoly};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn graph_seeds_decode() {
    for s in seeds("graph_json") {
        let doc = parse_graph(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        if doc.tiers.is_some() {
            let g = parse_tiered(&s).unwrap();
            assert_eq!(parse_tiered(&tiered_to_json(&g)).unwrap(), g);
        }
    }
}

#[test]
fn poly_seeds_decode() {
    for s in seeds("unipoly_text") {
        let p = UniPoly::parse_in(&s, "q").unwrap();
        assert_eq!(UniPoly::parse_in(&p.render("q"), "q").unwrap(), p);
    }
    for s in seeds("bipoly_text") {
        let p: BiPoly = s.parse().unwrap();
        assert_eq!(p.render(), s.trim());
    }
    for s in seeds("poly_json") {
        let uni = serde_json::from_str::<UniPoly>(&s).is_ok();
        let bi = serde_json::from_str::<BiPoly>(&s).is_ok();
        assert!(uni || bi, "{s}");
    }
}

#[test]
fn small_seeds_decode() {
    for s in seeds("cache_line") {
        parse_cache_line(&s).unwrap();
    }
    for s in seeds("partition") {
        s.trim().parse::<OrderedPartition>().unwrap();
    }
    for s in seeds("edge_ids") {
        parse_edge_ids(&s).unwrap();
    }
}
