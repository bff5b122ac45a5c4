//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary (`harness = false`).

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use tiered_tutte::activity::{tutte_via_activities, EdgeOrder};
use tiered_tutte::duality::dual_connected;
use tiered_tutte::graph::interval;
use tiered_tutte::harness::*;
use tiered_tutte::trees::{enumerate_tiered_trees, weight_recursive, weight_via_activity};
use tiered_tutte::{
    weight_polynomial, Multigraph, OrderedPartition, TieredGraph, TutteEngine, Vertex,
};

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn part(s: &str) -> OrderedPartition {
    s.parse().expect("literal partition")
}

fn set(xs: &[Vertex]) -> BTreeSet<Vertex> {
    xs.iter().copied().collect()
}

/// Summarises a batch of reports, naming the first failure.
fn tally(label: &str, reports: &[VerificationReport]) -> (bool, String) {
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    match failed.first() {
        None => (true, format!("{label}: {} ok", reports.len())),
        Some(r) => (
            false,
            format!(
                "{label}: {} of {} failed, first {}",
                failed.len(),
                reports.len(),
                r.to_json()
            ),
        ),
    }
}

fn combine(parts: Vec<(bool, String)>) -> Outcome {
    let pass = parts.iter().all(|(p, _)| *p);
    let detail = parts
        .into_iter()
        .map(|(_, d)| d)
        .collect::<Vec<_>>()
        .join("; ");
    outcome(pass, detail)
}

fn golden() -> Outcome {
    let cases = [
        ("2,2", "q + 4", 1),
        ("1,1,1", "q + 4", 1),
        ("2,3", "q^2 + 5*q + 11", 1),
        ("1,1,2", "q^2 + 5*q + 11", 1),
        ("3,3", "q^4 + 6*q^3 + 22*q^2 + 51*q + 66", 10),
        ("1,2,2", "q^4 + 6*q^3 + 22*q^2 + 51*q + 66", 10),
    ];
    let mut parts = Vec::new();
    for (p, expect, limit) in cases {
        let start = Instant::now();
        let got = weight_polynomial(&part(p));
        let took = start.elapsed();
        let ok = got.to_string() == expect && took < Duration::from_secs(limit);
        parts.push((ok, format!("P({p}) = {got} in {took:.2?}")));
    }
    combine(parts)
}

fn two_two_trees() -> Outcome {
    let trees = enumerate_tiered_trees(&interval(4), &part("2,2")).expect("valid family");
    let mut weights: Vec<usize> = trees.iter().map(weight_recursive).collect();
    let mut via: Vec<usize> = trees.iter().map(weight_via_activity).collect();
    weights.sort();
    via.sort();
    outcome(
        trees.len() == 5 && weights == [0, 0, 0, 0, 1] && via == weights,
        format!(
            "{} trees, weights {weights:?}, activity form {via:?}",
            trees.len()
        ),
    )
}

fn drawn_tree_dual() -> Outcome {
    let t = TieredGraph::from_classes(
        &[set(&[2, 3, 4, 6]), set(&[5, 7, 8])],
        [(2, 5), (3, 5), (4, 5), (4, 8), (6, 8), (6, 7)],
    )
    .expect("drawn tree is tiered");
    let d = dual_connected(&t).expect("tree is connected");
    let expect: BTreeSet<(Vertex, Vertex)> = [(3, 4), (2, 4), (2, 6), (5, 6), (5, 7), (5, 8)]
        .into_iter()
        .collect();
    outcome(
        d.edge_pairs() == expect && d.tier_class(1) == set(&[2, 3, 5]),
        format!(
            "dual edges {:?}, bottom tier {:?}",
            d.edge_pairs(),
            d.tier_class(1)
        ),
    )
}

fn eq_1_4_sweep(engine: &TutteEngine) -> Outcome {
    let start = Instant::now();
    let partitions: Vec<OrderedPartition> = (1..=6).flat_map(OrderedPartition::all_of).collect();
    let reports: Vec<VerificationReport> = partitions
        .iter()
        .map(|p| verify_eq_1_4(p, engine))
        .collect();
    let took = start.elapsed();
    let (ok, detail) = tally("partitions of n <= 6", &reports);
    outcome(
        ok && took <= Duration::from_secs(120),
        format!("{detail} in {took:.2?}"),
    )
}

fn permutation_sweeps(engine: &TutteEngine, cache: &WeightCache) -> Outcome {
    let perms = perm_sweep(6, cache);
    let mut thm14 = Vec::new();
    for total in 2..=5 {
        for p1 in 1..total {
            thm14.push(verify_theorem_1_4(p1, total - p1, engine, cache).expect("positive parts"));
            thm14.push(replay_eq_7_4(p1, total - p1, engine, cache).expect("positive parts"));
        }
    }
    let mut reductions = Vec::new();
    for n in 2..=5 {
        for p in OrderedPartition::all_of(n)
            .into_iter()
            .filter(|p| p.len() >= 2)
        {
            for r in 0..p.len() - 1 {
                reductions.push(verify_reduction(&p, r, engine, cache).expect("valid swap"));
            }
        }
    }
    combine(vec![
        tally("permutations, n <= 6", &perms),
        tally("(1,p1,p2) vs (p1+1,p2+1) with replay, p1+p2 <= 5", &thm14),
        tally("two-tier reduction, n <= 5", &reductions),
    ])
}

fn two_tier_sweep(engine: &TutteEngine) -> Outcome {
    let start = Instant::now();
    let hosts = simple_hosts(5, 6);
    let reports = theorem_1_3_sweep(&hosts, engine);
    let took = start.elapsed();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(2024);
    let random: Vec<VerificationReport> = random_hosts(150, 7, 42)
        .iter()
        .filter_map(|h| random_instance(h, &mut rng).map(|(u, p)| (h.clone(), u, p)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(h, u, p)| verify_theorem_1_3(h, u, p, engine).expect("admissible"))
        .collect();
    let (ok, detail) = tally(&format!("{} hosts", hosts.len()), &reports);
    let (rok, rdetail) = tally("random multigraph hosts", &random);
    outcome(
        ok && rok && took <= Duration::from_secs(300),
        format!("{detail} in {took:.2?}; {rdetail}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let memo = TutteEngine::new();
    let plain = TutteEngine::unmemoized();
    let mut corpus = connected_corpus(6);
    let simple = corpus.len();
    corpus.extend(
        random_hosts(300, 5, 7)
            .into_iter()
            .filter(Multigraph::is_connected),
    );
    let failures: Vec<String> = corpus
        .par_iter()
        .filter_map(|g| {
            let a = memo.tutte(g);
            let b = plain.tutte(g);
            let mut orders: Vec<EdgeOrder> = (1..=3).map(|s| EdgeOrder::random(g, s)).collect();
            orders.push(EdgeOrder::by_id(g));
            let agree = a == b
                && orders
                    .iter()
                    .all(|o| tutte_via_activities(g, o).is_ok_and(|t| t == a));
            (!agree).then(|| tiered_tutte::io::graph_to_json(g))
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!(
            "{simple} simple classes + {} multigraphs, 4 orders each, {} disagreements{}",
            corpus.len() - simple,
            failures.len(),
            failures
                .first()
                .map(|f| format!(", first {f}"))
                .unwrap_or_default()
        ),
    )
}

fn property_suites(engine: &TutteEngine) -> Outcome {
    let two_tier: Vec<(BTreeSet<Vertex>, OrderedPartition)> = (2..=6)
        .flat_map(|n| {
            OrderedPartition::all_of(n)
                .into_iter()
                .filter(|p| p.len() == 2)
                .map(move |p| (interval(n), p))
        })
        .collect();
    let duality: Vec<VerificationReport> = two_tier
        .par_iter()
        .flat_map(|(u, p)| verify_duality_laws(u, p).expect("two parts"))
        .collect();
    let prop51: Vec<VerificationReport> = two_tier
        .par_iter()
        .map(|(u, p)| verify_prop_5_1(u, p).expect("two parts"))
        .collect();
    let minima: Vec<VerificationReport> = two_tier
        .par_iter()
        .flat_map(|(u, p)| verify_min_characterizations(u, p).expect("two parts"))
        .collect();

    let mut hosts = simple_hosts(4, 6);
    hosts.extend(random_hosts(40, 5, 11));
    let phi = phi_sweep(&hosts);

    let mut split_corpus = connected_corpus(5);
    split_corpus.extend(
        random_hosts(60, 5, 5)
            .into_iter()
            .filter(Multigraph::is_connected),
    );
    let split: Vec<VerificationReport> = split_corpus
        .par_iter()
        .map(|g| verify_decomposition(g, &[1, 2, 3]).expect("connected"))
        .collect();

    let lemma71 = lemma_7_1_sweep(5, engine);
    let lemma72: Vec<VerificationReport> = (0..=8).map(verify_lemma_7_2).collect();

    let weights: Vec<VerificationReport> = (1..=6)
        .flat_map(OrderedPartition::all_of)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| {
            let trees = enumerate_tiered_trees(&interval(p.total()), p).expect("sizes match");
            let held = trees
                .iter()
                .filter(|t| weight_recursive(t) == weight_via_activity(t))
                .count();
            VerificationReport::counts(
                "weight_forms",
                serde_json::json!({ "p": p.to_string() }),
                held,
                trees.len(),
            )
        })
        .collect();

    combine(vec![
        tally("duality laws |U| <= 6", &duality),
        tally("forest activity duality |U| <= 6", &prop51),
        tally("pairwise T -> T* activity", &phi),
        tally("split activity formula", &split),
        tally("least-edge characterisations |U| <= 6", &minima),
        tally("middle-vertex difference n <= 5", &lemma71),
        tally("a1 - a2 = 1 n <= 8", &lemma72),
        tally("recursive vs activity weight n <= 6", &weights),
    ])
}

fn main() -> ExitCode {
    let engine = TutteEngine::new();
    let cache = WeightCache::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("golden weight polynomials", Box::new(golden)),
        ("T_(2,2) tree count and weights", Box::new(two_two_trees)),
        ("dual of the drawn two-tier tree", Box::new(drawn_tree_dual)),
        (
            "weight polynomial = sum of T(1,q), n <= 6",
            Box::new(|| eq_1_4_sweep(&engine)),
        ),
        (
            "permutation invariance and (1,p1,p2) identity",
            Box::new(|| permutation_sweeps(&engine, &cache)),
        ),
        (
            "two-tier swap identity over hosts",
            Box::new(|| two_tier_sweep(&engine)),
        ),
        (
            "deletion-contraction vs activity expansion",
            Box::new(oracle_equivalence),
        ),
        ("property suites", Box::new(|| property_suites(&engine))),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        all &= o.pass;
        println!(
            "[{}] {}. {name} ({:.2?}): {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
