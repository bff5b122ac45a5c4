use std::collections::BTreeSet;

use tiered_tutte::graph::{complete_tiered_graph, interval};
use tiered_tutte::harness::*;
use tiered_tutte::{
    EdgeId, EdgeSet, Multigraph, OrderedPartition, TieredGraph, TutteEngine, UniPoly, Vertex,
};

fn part(s: &str) -> OrderedPartition {
    s.parse().unwrap()
}

fn set(xs: &[Vertex]) -> BTreeSet<Vertex> {
    xs.iter().copied().collect()
}

fn poly(s: &str) -> UniPoly {
    UniPoly::parse_in(s, "q").unwrap()
}

#[test]
fn weight_sum_examples() {
    let engine = TutteEngine::new();
    let r = verify_eq_1_4(&part("2,2"), &engine);
    assert!(r.pass);
    assert_eq!(r.lhs, poly("q + 4"));
    assert_eq!(verify_eq_1_4(&part("1,1"), &engine).rhs, UniPoly::one());
    let r = verify_eq_1_4(&part("2,3"), &engine);
    assert!(r.pass);
    assert_eq!(r.rhs, poly("q^2 + 5*q + 11"));
}

#[test]
fn permutation_examples() {
    let cache = WeightCache::new();
    let r = verify_perm_invariance(&part("1,1,2"), &[2, 0, 1], &cache).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs, poly("q^2 + 5*q + 11"));
    assert!(
        verify_perm_invariance(&part("3,1"), &[0, 1], &cache)
            .unwrap()
            .pass
    );
    let r = verify_perm_invariance(&part("1,2,2"), &[1, 2, 0], &cache).unwrap();
    assert!(r.pass);
    assert_eq!(r.rhs, poly("q^4 + 6*q^3 + 22*q^2 + 51*q + 66"));
    assert!(verify_perm_invariance(&part("1,2"), &[0, 0], &cache).is_err());
}

#[test]
fn perm_sweep_small() {
    let cache = WeightCache::new();
    let reports = perm_sweep(4, &cache);
    // compositions of n ≤ 4 weighted by m!
    assert_eq!(
        reports.len(),
        1 + (1 + 2) + (1 + 2 * 2 + 6) + (1 + 3 * 2 + 3 * 6 + 24)
    );
    assert!(reports.iter().all(|r| r.pass));
}

#[test]
fn host_swap_examples() {
    let engine = TutteEngine::new();
    let empty = Multigraph::with_vertices(1..=4).unwrap();
    let r = verify_theorem_1_3(&empty, &interval(4), &part("2,2"), &engine).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs, UniPoly::parse_in("y + 4", "y").unwrap());

    let fig4 = Multigraph::from_edge_list(1..=4, [(1, 4), (2, 3)]).unwrap();
    let r = verify_theorem_1_3(&fig4, &interval(4), &part("2,2"), &engine).unwrap();
    assert!(r.pass, "{}", r.to_json());

    let bigger =
        Multigraph::from_edge_list(1..=5, [(1, 5), (5, 2), (4, 4), (3, 5), (3, 5)]).unwrap();
    for p in ["1,2", "2,1"] {
        let r = verify_theorem_1_3(&bigger, &set(&[1, 2, 3]), &part(p), &engine).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }
    assert!(verify_theorem_1_3(&fig4, &set(&[1, 9]), &part("1,1"), &engine).is_err());
    assert!(verify_theorem_1_3(&fig4, &interval(4), &part("1,1,2"), &engine).is_err());
}

#[test]
fn host_swap_random_hosts() {
    let engine = TutteEngine::new();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    for host in random_hosts(40, 6, 99) {
        if let Some((u, p)) = random_instance(&host, &mut rng) {
            let r = verify_theorem_1_3(&host, &u, &p, &engine).unwrap();
            assert!(r.pass, "{}", r.to_json());
        }
    }
}

#[test]
fn pairing_examples() {
    // a cyclic E0 leaves both sides empty
    let tri = Multigraph::from_edge_list(1..=4, [(1, 2), (2, 3), (1, 3)]).unwrap();
    let e0: EdgeSet = (0..3).map(EdgeId).collect();
    let r = verify_phi_identity(&tri, &interval(4), &part("2,2"), &e0).unwrap();
    assert!(r.pass);
    assert!(r.lhs.is_zero() && r.rhs.is_zero());

    let empty = Multigraph::with_vertices(1..=4).unwrap();
    let r = verify_phi_identity(&empty, &interval(4), &part("2,2"), &EdgeSet::new()).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs.eval(&1.into()), 5.into());

    let fig4 = Multigraph::from_edge_list(1..=4, [(1, 4), (2, 3)]).unwrap();
    let reports = phi_reports(&fig4, &interval(4), &part("2,2"), None).unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r.pass));
    assert!(verify_phi_identity(&fig4, &interval(4), &part("2,2"), &[EdgeId(5)].into()).is_err());
}

#[test]
fn pairing_random_hosts() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    for host in random_hosts(25, 5, 1234) {
        if let Some((u, p)) = random_instance(&host, &mut rng) {
            for r in phi_reports(&host, &u, &p, None).unwrap() {
                assert!(r.pass, "{}", r.to_json());
            }
        }
    }
}

#[test]
fn middle_vertex_examples() {
    let engine = TutteEngine::new();
    let r = verify_lemma_7_1(2, 2, &set(&[1]), &set(&[4]), &engine).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs, poly("q + 2"));
    // U1 = {4} sits below larger labels only, so it is isolated
    let r = verify_lemma_7_1(2, 1, &set(&[4]), &set(&[3]), &engine).unwrap();
    assert!(r.pass);
    assert!(r.lhs.is_zero());
    assert!(verify_lemma_7_1(2, 2, &set(&[1]), &set(&[3]), &engine).is_err());
    assert!(verify_lemma_7_1(2, 4, &set(&[1]), &set(&[2]), &engine).is_err());
    assert!(lemma_7_1_sweep(3, &engine).iter().all(|r| r.pass));
}

#[test]
fn a_statistics() {
    let g = complete_tiered_graph(&[set(&[1, 3, 4, 6, 7]), set(&[2, 5, 8, 9, 10, 11])]).unwrap();
    assert_eq!(a_stats(&g).unwrap(), (3, 2));
    let blocks = tier_blocks(&g).unwrap();
    assert_eq!(
        blocks,
        vec![
            set(&[1]),
            set(&[2]),
            set(&[3, 4]),
            set(&[5]),
            set(&[6, 7]),
            set(&[8, 9, 10, 11])
        ]
    );
    let g = complete_tiered_graph(&[interval(5), set(&[6])]).unwrap();
    assert_eq!(a_stats(&g).unwrap(), (1, 0));
    let g = complete_tiered_graph(&[set(&[2, 3]), set(&[1, 4])]).unwrap();
    assert!(!g.graph().is_connected());
    let g = complete_tiered_graph(&[set(&[2, 3]), set(&[4, 5])]).unwrap();
    assert!(a_stats(&g).is_err());
    for n in 0..=6 {
        assert!(verify_lemma_7_2(n).pass);
    }
}

#[test]
fn single_vertex_tier_examples() {
    let engine = TutteEngine::new();
    let cache = WeightCache::new();
    for (p1, p2, expect) in [
        (1, 1, "q + 4"),
        (1, 2, "q^2 + 5*q + 11"),
        (2, 2, "q^4 + 6*q^3 + 22*q^2 + 51*q + 66"),
    ] {
        let r = verify_theorem_1_4(p1, p2, &engine, &cache).unwrap();
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.lhs, poly(expect));
        let replay = replay_eq_7_4(p1, p2, &engine, &cache).unwrap();
        assert!(replay.pass);
        assert_eq!(replay.lhs, poly(expect));
    }
    assert!(verify_theorem_1_4(0, 2, &engine, &cache).is_err());
}

#[test]
fn reduction_coherence_small() {
    let engine = TutteEngine::new();
    let cache = WeightCache::new();
    for n in 2..=4 {
        for p in OrderedPartition::all_of(n)
            .into_iter()
            .filter(|p| p.len() >= 2)
        {
            for r in 0..p.len() - 1 {
                let rep = verify_reduction(&p, r, &engine, &cache).unwrap();
                assert!(rep.pass, "{}", rep.to_json());
            }
        }
    }
}

#[test]
fn forest_properties_small() {
    for n in 2..=4 {
        for p in OrderedPartition::all_of(n)
            .into_iter()
            .filter(|p| p.len() == 2)
        {
            let u = interval(n);
            assert!(verify_prop_5_1(&u, &p).unwrap().pass);
            for r in verify_duality_laws(&u, &p).unwrap() {
                assert!(r.pass, "{}", r.to_json());
            }
            for r in verify_min_characterizations(&u, &p).unwrap() {
                assert!(r.pass, "{}", r.to_json());
            }
        }
    }
}

#[test]
fn report_json_shape() {
    let engine = TutteEngine::new();
    let r = verify_eq_1_4(&part("2,2"), &engine);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["identity", "lhs", "params", "pass", "rhs", "witness"]
    );
    assert_eq!(v["lhs"], serde_json::json!([[1, 1], [0, 4]]));
    assert!(v["witness"].is_null());
}

#[test]
fn tiered_graph_accessors_used_by_reports() {
    let g = TieredGraph::from_classes(&[set(&[1]), set(&[2])], [(1, 2)]).unwrap();
    assert_eq!(a_stats(&g).unwrap(), (1, 0));
}
