//! Exhaustive checks of the identities at desk scale.
//!
//! Every check returns a [`VerificationReport`]. Polynomial identities put
//! the two sides in `lhs`/`rhs`; property checks put the number of cases
//! that held in `lhs` and the number examined in `rhs`, as constants. The
//! two sides of an identity never share an intermediate result.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::activity::{ea_decomposed, external_activity, forests, spanning_trees, EdgeOrder};
use crate::canon::canonical_key;
use crate::duality::{ct_of, dual_graph, dual_quasi_tree, QuasiTree};
use crate::error::{invalid, Result};
use crate::graph::{
    complete_quasi_family, complete_tiered_graph, enumerate_complete_family, interval,
    ordered_set_partitions, EdgeId, EdgeSet, Multigraph, OrderedPartition, QuasiTieredGraph,
    TieredGraph, Vertex,
};
use crate::io::{graph_to_json, tiered_to_json};
use crate::poly::UniPoly;
use crate::trees::weight_polynomial;
use crate::tutte::TutteEngine;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Value,
    pub lhs: UniPoly,
    pub rhs: UniPoly,
    pub pass: bool,
    pub witness: Option<Value>,
}

impl VerificationReport {
    /// Passes iff the two polynomials are equal.
    pub fn compare(identity: &str, params: Value, lhs: UniPoly, rhs: UniPoly) -> Self {
        let pass = lhs == rhs;
        Self {
            identity: identity.to_owned(),
            params,
            lhs,
            rhs,
            pass,
            witness: None,
        }
    }

    /// `held` of `total` cases satisfied the property.
    pub fn counts(identity: &str, params: Value, held: usize, total: usize) -> Self {
        Self::compare(
            identity,
            params,
            UniPoly::constant(held as u64),
            UniPoly::constant(total as u64),
        )
    }

    /// Attaches a witness. A witness always means failure.
    fn with_witness(mut self, witness: Option<Value>) -> Self {
        if witness.is_some() {
            self.pass = false;
        }
        self.witness = witness;
        self
    }

    /// Attaches a witness only if the report already failed.
    fn explain(mut self, witness: impl FnOnce() -> Value) -> Self {
        if !self.pass {
            self.witness = Some(witness());
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn graph_value(g: &Multigraph) -> Value {
    serde_json::from_str(&graph_to_json(g)).expect("graph JSON is valid")
}

fn tiered_value(g: &TieredGraph) -> Value {
    serde_json::from_str(&tiered_to_json(g)).expect("graph JSON is valid")
}

fn poly_value(p: &UniPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn ids_value(ids: &EdgeSet) -> Value {
    ids.iter().map(|id| id.0).collect()
}

fn two_part(p: &OrderedPartition) -> Result<OrderedPartition> {
    if p.len() != 2 {
        return Err(invalid(format!("{p} must have exactly two parts")));
    }
    Ok(p.reversed())
}

/// Memoised `P_p(q)`, shared across a sweep.
#[derive(Debug, Default)]
pub struct WeightCache {
    map: Mutex<HashMap<OrderedPartition, UniPoly>>,
}

impl WeightCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: &OrderedPartition) -> UniPoly {
        if let Some(hit) = self.map.lock().expect("cache lock").get(p) {
            return hit.clone();
        }
        let poly = weight_polynomial(p);
        self.map
            .lock()
            .expect("cache lock")
            .entry(p.clone())
            .or_insert(poly)
            .clone()
    }
}

/// `Σ_{G ∈ CT^c_p} T_G(1, q)`.
pub fn connected_tutte_sum(p: &OrderedPartition, engine: &TutteEngine) -> UniPoly {
    let family = enumerate_complete_family(&interval(p.total()), p).expect("sizes match");
    family
        .par_iter()
        .map(|g| engine.tutte_c(g.graph()))
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// `P_p(q)` from tree weights against `Σ T_G(1, q)` over `CT^c_p`.
pub fn verify_eq_1_4(p: &OrderedPartition, engine: &TutteEngine) -> VerificationReport {
    let lhs = weight_polynomial(p);
    let rhs = connected_tutte_sum(p, engine);
    VerificationReport::compare("eq14", json!({ "p": p.to_string() }), lhs, rhs).explain(|| {
        let family = enumerate_complete_family(&interval(p.total()), p).expect("sizes match");
        let members: Vec<Value> = family
            .iter()
            .filter(|g| g.graph().is_connected())
            .map(|g| json!({ "graph": tiered_value(g), "tutte_c": poly_value(&engine.tutte_c(g.graph())) }))
            .collect();
        json!({ "members": members })
    })
}

/// `P_p(q) = P_{π(p)}(q)`; `perm` is 0-based.
pub fn verify_perm_invariance(
    p: &OrderedPartition,
    perm: &[usize],
    cache: &WeightCache,
) -> Result<VerificationReport> {
    let image = p.permuted(perm)?;
    Ok(VerificationReport::compare(
        "perm",
        json!({ "p": p.to_string(), "perm": perm, "image": image.to_string() }),
        cache.get(p),
        cache.get(&image),
    ))
}

/// Every ordered partition of every `n ≤ max_n`, under every permutation.
pub fn perm_sweep(max_n: usize, cache: &WeightCache) -> Vec<VerificationReport> {
    let partitions: Vec<OrderedPartition> =
        (1..=max_n).flat_map(OrderedPartition::all_of).collect();
    partitions.par_iter().for_each(|p| {
        cache.get(p);
    });
    partitions
        .iter()
        .flat_map(|p| {
            (0..p.len())
                .permutations(p.len())
                .map(|perm| verify_perm_invariance(p, &perm, cache).expect("valid permutation"))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn quasi_side(
    host: &Multigraph,
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
    engine: &TutteEngine,
) -> Result<Vec<(QuasiTieredGraph, UniPoly)>> {
    Ok(complete_quasi_family(host, universe, p)?
        .into_iter()
        .map(|g| {
            let t = engine.tutte_c(g.combined());
            (g, t)
        })
        .collect())
}

/// `Σ_{CT^c_{U,p}(H)} T_G(1, y) = Σ_{CT^c_{U,p'}(H)} T_G(1, y)`.
pub fn verify_theorem_1_3(
    host: &Multigraph,
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
    engine: &TutteEngine,
) -> Result<VerificationReport> {
    let swapped = two_part(p)?;
    if !universe.is_subset(host.vertices()) {
        return Err(invalid("U must be a subset of V(H)"));
    }
    let left = quasi_side(host, universe, p, engine)?;
    let right = quasi_side(host, universe, &swapped, engine)?;
    let sum = |side: &[(QuasiTieredGraph, UniPoly)]| side.iter().map(|(_, t)| t.clone()).sum();
    let params = json!({ "host": graph_value(host), "U": universe, "p": p.to_string() });
    Ok(
        VerificationReport::compare("thm13", params, sum(&left), sum(&right)).explain(|| {
            let detail = |side: &[(QuasiTieredGraph, UniPoly)]| -> Vec<Value> {
                side.iter()
                    .map(|(g, t)| json!({ "V1": g.tiered().tier_class(1), "tutte_c": poly_value(t) }))
                    .collect()
            };
            json!({ "p_side": detail(&left), "p_prime_side": detail(&right) })
        }),
    )
}

/// All labelled simple graphs on `[k]`, `1 ≤ k ≤ max_vertices`, with at
/// most `max_edges` edges. Edge ids follow the lexicographic pair order.
pub fn simple_hosts(max_vertices: u32, max_edges: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for k in 1..=max_vertices {
        let pairs: Vec<(Vertex, Vertex)> = (1..=k).tuple_combinations().collect();
        for size in 0..=max_edges.min(pairs.len()) {
            for chosen in pairs.iter().copied().combinations(size) {
                out.push(Multigraph::from_edge_list(1..=k, chosen).expect("labels are positive"));
            }
        }
    }
    out
}

/// Random multigraphs with loops and parallel edges, reproducible from the
/// seed. Vertex counts lie in `2..=max_vertices`.
pub fn random_hosts(count: usize, max_vertices: u32, seed: u64) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(2..=max_vertices.max(2));
            let m = rng.gen_range(0..=k as usize + 2);
            let pairs: Vec<(Vertex, Vertex)> = (0..m)
                .map(|_| (rng.gen_range(1..=k), rng.gen_range(1..=k)))
                .collect();
            Multigraph::from_edge_list(1..=k, pairs).expect("labels are positive")
        })
        .collect()
}

/// Every `(U, p)` with `U ⊆ V(H)`, `|U| ≥ 2` and `p` a two-part partition.
pub fn two_tier_instances(host: &Multigraph) -> Vec<(BTreeSet<Vertex>, OrderedPartition)> {
    let vs: Vec<Vertex> = host.vertices().iter().copied().collect();
    let mut out = Vec::new();
    for size in 2..=vs.len() {
        for u in vs.iter().copied().combinations(size) {
            for p1 in 1..size {
                let p = OrderedPartition::new(vec![p1, size - p1]).expect("positive parts");
                out.push((u.iter().copied().collect(), p));
            }
        }
    }
    out
}

/// One random admissible `(U, p)` per host.
pub fn random_instance(
    host: &Multigraph,
    rng: &mut ChaCha8Rng,
) -> Option<(BTreeSet<Vertex>, OrderedPartition)> {
    let vs: Vec<Vertex> = host.vertices().iter().copied().collect();
    if vs.len() < 2 {
        return None;
    }
    let size = rng.gen_range(2..=vs.len());
    let mut pool = vs;
    let mut u = BTreeSet::new();
    while u.len() < size {
        let i = rng.gen_range(0..pool.len());
        u.insert(pool.swap_remove(i));
    }
    let p1 = rng.gen_range(1..size);
    Some((
        u,
        OrderedPartition::new(vec![p1, size - p1]).expect("positive parts"),
    ))
}

pub fn theorem_1_3_sweep(hosts: &[Multigraph], engine: &TutteEngine) -> Vec<VerificationReport> {
    let instances: Vec<(&Multigraph, BTreeSet<Vertex>, OrderedPartition)> = hosts
        .iter()
        .flat_map(|h| {
            two_tier_instances(h)
                .into_iter()
                .map(move |(u, p)| (h, u, p))
        })
        .collect();
    instances
        .par_iter()
        .map(|(h, u, p)| verify_theorem_1_3(h, u, p, engine).expect("instances are admissible"))
        .collect()
}

struct PhiMember {
    graph: usize,
    tree: EdgeSet,
    e0: EdgeSet,
    ea: usize,
}

fn phi_members(family: &[QuasiTieredGraph], second: bool) -> Result<Vec<PhiMember>> {
    let mut out = Vec::new();
    for (i, g) in family.iter().enumerate() {
        let order = if second {
            EdgeOrder::omega_two(g)?
        } else {
            EdgeOrder::omega_one(g)?
        };
        for tree in spanning_trees(g.combined()) {
            let ea = external_activity(g.combined(), &tree, &order)?;
            let e0 = tree
                .iter()
                .copied()
                .filter(|id| g.is_host_edge(*id))
                .collect();
            out.push(PhiMember {
                graph: i,
                tree,
                e0,
                ea,
            });
        }
    }
    Ok(out)
}

/// `ea_{ω₂, G*_T}(T*)` for a spanning tree `T` of `g`.
pub fn dual_activity(
    g: &QuasiTieredGraph,
    tree: &EdgeSet,
) -> Result<(QuasiTieredGraph, EdgeSet, usize)> {
    let star = dual_quasi_tree(&QuasiTree::from_spanning_tree(g, tree)?)?;
    let g_star = star.containing_graph();
    let ids = star.edge_ids_in(&g_star)?;
    let ea = external_activity(g_star.combined(), &ids, &EdgeOrder::omega_two(&g_star)?)?;
    Ok((g_star, ids, ea))
}

/// Builds `Φ_{U,p}(H, E₀)` and `Φ_{U,p'}(H, E₀)` for every `E₀` at once and
/// reports one identity per `E₀` that occurs on either side. With `only`,
/// reports just that `E₀` (possibly with both sides empty).
pub fn phi_reports(
    host: &Multigraph,
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
    only: Option<&EdgeSet>,
) -> Result<Vec<VerificationReport>> {
    let swapped = two_part(p)?;
    if let Some(e0) = only {
        if let Some(id) = e0.iter().find(|id| host.edge(**id).is_none()) {
            return Err(invalid(format!("E0 edge {id} is not an edge of H")));
        }
    }
    let fam1 = complete_quasi_family(host, universe, p)?;
    let fam2 = complete_quasi_family(host, universe, &swapped)?;
    let left = phi_members(&fam1, false)?;
    let right = phi_members(&fam2, true)?;

    let mut keys: BTreeSet<EdgeSet> = left.iter().chain(&right).map(|m| m.e0.clone()).collect();
    if let Some(e0) = only {
        keys = BTreeSet::from([e0.clone()]);
    }
    let generating = |side: &[PhiMember], e0: &EdgeSet| -> UniPoly {
        side.iter()
            .filter(|m| &m.e0 == e0)
            .map(|m| UniPoly::monomial(m.ea as u32, 1))
            .sum()
    };
    let mut out = Vec::new();
    for e0 in keys {
        let mut witness = None;
        for m in left.iter().filter(|m| m.e0 == e0) {
            let g = &fam1[m.graph];
            let (g_star, ids, ea_star) = dual_activity(g, &m.tree)?;
            let spans = g_star.combined().spanning_subgraph(&ids)?.is_tree();
            if ea_star != m.ea || !spans {
                witness = Some(json!({
                    "graph_V1": g.tiered().tier_class(1),
                    "tree": ids_value(&m.tree),
                    "ea_omega1": m.ea,
                    "dual_V1": g_star.tiered().tier_class(1),
                    "dual_tree": ids_value(&ids),
                    "ea_omega2": ea_star,
                    "dual_is_spanning_tree": spans,
                }));
                break;
            }
        }
        let params = json!({
            "host": graph_value(host),
            "U": universe,
            "p": p.to_string(),
            "E0": ids_value(&e0),
        });
        let lhs = generating(&left, &e0);
        let rhs = generating(&right, &e0);
        out.push(VerificationReport::compare("phi", params, lhs, rhs).with_witness(witness));
    }
    Ok(out)
}

/// The `Φ` identity for one `E₀`, plus the pairwise refinement
/// `ea_{ω₁,G}(T) = ea_{ω₂,G*_T}(T*)`.
pub fn verify_phi_identity(
    host: &Multigraph,
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
    e0: &EdgeSet,
) -> Result<VerificationReport> {
    Ok(phi_reports(host, universe, p, Some(e0))?.remove(0))
}

pub fn phi_sweep(hosts: &[Multigraph]) -> Vec<VerificationReport> {
    let instances: Vec<(&Multigraph, BTreeSet<Vertex>, OrderedPartition)> = hosts
        .iter()
        .flat_map(|h| {
            two_tier_instances(h)
                .into_iter()
                .map(move |(u, p)| (h, u, p))
        })
        .collect();
    instances
        .par_iter()
        .map(|(h, u, p)| phi_reports(h, u, p, None).expect("instances are admissible"))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// All forests of `F_{U,p}`, grouped under their complete graph.
pub fn tiered_forests(
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<Vec<TieredGraph>> {
    let mut out = Vec::new();
    for q in enumerate_complete_family(universe, p)? {
        for ids in forests(q.graph()) {
            out.push(q.with_edges(&ids)?);
        }
    }
    Ok(out)
}

fn tiered_edges(g: &TieredGraph) -> Vec<(EdgeId, Vertex, Vertex)> {
    g.graph().edges().iter().map(|e| (e.id, e.u, e.v)).collect()
}

/// `ea_{ω₁,CT(F)}(F) = ea_{ω₂,CT(F')}(F')` for every `F ∈ F_{U,p}`.
pub fn verify_prop_5_1(
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<VerificationReport> {
    two_part(p)?;
    let n_max = universe.iter().next_back().copied().unwrap_or(0);
    let mut lhs = UniPoly::zero();
    let mut rhs = UniPoly::zero();
    let mut witness = None;
    for f in tiered_forests(universe, p)? {
        let ct = ct_of(&f);
        let order = EdgeOrder::omega_one_parts(&[], tiered_edges(&ct))?;
        let ids: EdgeSet = f
            .edge_pairs()
            .into_iter()
            .map(|(u, v)| ct.edge_between(u, v).expect("F lies in CT(F)"))
            .collect();
        let ea1 = external_activity(ct.graph(), &ids, &order)?;

        let fd = dual_graph(&f)?;
        let ctd = ct_of(&fd);
        let order = EdgeOrder::omega_two_parts(&[], tiered_edges(&ctd), n_max)?;
        let ids: EdgeSet = fd
            .edge_pairs()
            .into_iter()
            .map(|(u, v)| ctd.edge_between(u, v).expect("F' lies in CT(F')"))
            .collect();
        let ea2 = external_activity(ctd.graph(), &ids, &order)?;
        lhs += &UniPoly::monomial(ea1 as u32, 1);
        rhs += &UniPoly::monomial(ea2 as u32, 1);
        if ea1 != ea2 && witness.is_none() {
            witness =
                Some(json!({ "forest": tiered_value(&f), "ea_omega1": ea1, "ea_omega2": ea2 }));
        }
    }
    let params = json!({ "U": universe, "p": p.to_string() });
    Ok(VerificationReport::compare("prop51", params, lhs, rhs).with_witness(witness))
}

/// The dual-graph laws over `F_{U,p}`: involution, explicit reversal
/// isomorphism, tier-size swap, component preservation, and bijectivity
/// onto `F_{U,p'}`.
pub fn verify_duality_laws(
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<Vec<VerificationReport>> {
    let swapped = two_part(p)?;
    let all = tiered_forests(universe, p)?;
    let targets = tiered_forests(universe, &swapped)?;
    let params = json!({ "U": universe, "p": p.to_string() });
    let mut held = [0usize; 4];
    let mut witness: [Option<Value>; 4] = Default::default();
    let mut images = BTreeSet::new();
    for f in &all {
        let d = dual_graph(f)?;
        let checks = [
            dual_graph(&d)? == *f,
            reversal_image(f) == d.edge_pairs(),
            d.tier_sizes() == f.tier_sizes().into_iter().rev().collect::<Vec<_>>(),
            d.graph().components() == f.graph().components(),
        ];
        for (k, ok) in checks.into_iter().enumerate() {
            if ok {
                held[k] += 1;
            } else if witness[k].is_none() {
                witness[k] = Some(json!({ "forest": tiered_value(f), "dual": tiered_value(&d) }));
            }
        }
        images.insert(shape(&d));
    }
    let target_set: BTreeSet<_> = targets.iter().map(shape).collect();
    let names = [
        "dual_involution",
        "dual_reversal_isomorphism",
        "dual_tier_swap",
        "dual_components",
    ];
    let mut out: Vec<VerificationReport> = names
        .iter()
        .zip(held)
        .zip(witness)
        .map(|((name, h), w)| {
            VerificationReport::counts(name, params.clone(), h, all.len()).with_witness(w)
        })
        .collect();
    out.push(VerificationReport::counts(
        "dual_bijection",
        params,
        images.intersection(&target_set).count(),
        target_set.len().max(all.len()),
    ));
    Ok(out)
}

type Shape = (BTreeMap<Vertex, usize>, BTreeSet<(Vertex, Vertex)>);

/// A tiered graph up to edge ids.
fn shape(g: &TieredGraph) -> Shape {
    (g.tier_map().clone(), g.edge_pairs())
}

/// Images of `F`'s edges under the componentwise map `x_i ↦ x_{s+1-i}`.
fn reversal_image(f: &TieredGraph) -> BTreeSet<(Vertex, Vertex)> {
    let mut flip = BTreeMap::new();
    for comp in f.graph().components() {
        flip.extend(comp.iter().copied().zip(comp.iter().rev().copied()));
    }
    f.edge_pairs()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (flip[&u], flip[&v]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// The two characterisations of the `ω₁`-least and `ω₂`-least edge of a
/// subset `E* ⊆ E(Q)`, checked for every `Q ∈ CT_{U,p}`, every nonempty
/// `E*` and every `e ∈ E*`.
pub fn verify_min_characterizations(
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<Vec<VerificationReport>> {
    let n_max = universe.iter().next_back().copied().unwrap_or(0);
    let params = json!({ "U": universe, "p": p.to_string() });
    let mut total = 0;
    let mut held = [0usize; 2];
    let mut witness: [Option<Value>; 2] = Default::default();
    for q in enumerate_complete_family(universe, p)? {
        let edges: Vec<(EdgeId, Vertex, Vertex)> = tiered_edges(&q);
        let w1 = EdgeOrder::omega_one_parts(&[], edges.iter().copied())?;
        let w2 = EdgeOrder::omega_two_parts(&[], edges.iter().copied(), n_max)?;
        for size in 1..=edges.len() {
            for subset in edges.iter().copied().combinations(size) {
                let min1 = w1.min_edge(subset.iter().map(|e| e.0));
                let min2 = w2.min_edge(subset.iter().map(|e| e.0));
                let ends: BTreeSet<Vertex> = subset.iter().flat_map(|e| [e.1, e.2]).collect();
                let lo = *ends.iter().next().expect("nonempty");
                let hi = *ends.iter().next_back().expect("nonempty");
                for &(id, u, v) in &subset {
                    total += 1;
                    let first =
                        u == lo && Some(v) == subset.iter().filter(|e| e.1 == u).map(|e| e.2).min();
                    let second =
                        v == hi && Some(u) == subset.iter().filter(|e| e.2 == v).map(|e| e.1).max();
                    for (k, (claimed, actual)) in
                        [(first, min1 == Some(id)), (second, min2 == Some(id))]
                            .into_iter()
                            .enumerate()
                    {
                        if claimed == actual {
                            held[k] += 1;
                        } else if witness[k].is_none() {
                            witness[k] = Some(json!({
                                "graph": tiered_value(&q),
                                "subset": subset.iter().map(|e| [e.1, e.2]).collect::<Vec<_>>(),
                                "edge": [u, v],
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(["omega1_min", "omega2_min"]
        .iter()
        .zip(held)
        .zip(witness)
        .map(|((name, h), w)| {
            VerificationReport::counts(name, params.clone(), h, total).with_witness(w)
        })
        .collect())
}

/// Checks the split formula for external activity on `g`: for each seeded
/// random order, each prefix `E₁` of that order, each spanning tree, with
/// and without dropping the isolated vertices of `G⟨E₂⟩`.
pub fn verify_decomposition(g: &Multigraph, seeds: &[u64]) -> Result<VerificationReport> {
    let trees = spanning_trees(g);
    let mut held = 0;
    let mut total = 0;
    let mut witness = None;
    for &seed in seeds {
        let order = EdgeOrder::random(g, seed);
        let mut ranked: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
        ranked.sort_by_key(|id| order.key(*id));
        for k in 0..=ranked.len() {
            let low: EdgeSet = ranked[..k].iter().copied().collect();
            for tree in &trees {
                let direct = external_activity(g, tree, &order)?;
                for drop in [false, true] {
                    total += 1;
                    let split = ea_decomposed(g, tree, &low, &order, drop)?;
                    if split == direct {
                        held += 1;
                    } else if witness.is_none() {
                        witness = Some(json!({
                            "seed": seed, "low": ids_value(&low), "tree": ids_value(tree),
                            "drop_isolated": drop, "direct": direct, "split": split,
                        }));
                    }
                }
            }
        }
    }
    let params = json!({ "graph": graph_value(g), "seeds": seeds });
    Ok(VerificationReport::counts("split_activity", params, held, total).with_witness(witness))
}

fn tc(engine: &TutteEngine, classes: &[BTreeSet<Vertex>]) -> UniPoly {
    engine.tutte_c(
        complete_tiered_graph(classes)
            .expect("disjoint nonempty classes")
            .graph(),
    )
}

/// `T^c(CT(U₁,{r},U₂)) = T^c(CT(U₁∪{r}, U₂∪{r+1})) − T^c(CT(U₁∪{r+1}, U₂∪{r}))`
/// where `{U₁, U₂}` partitions `[n+2] ∖ {r, r+1}`.
pub fn verify_lemma_7_1(
    n: usize,
    r: Vertex,
    u1: &BTreeSet<Vertex>,
    u2: &BTreeSet<Vertex>,
    engine: &TutteEngine,
) -> Result<VerificationReport> {
    let top = n as Vertex + 2;
    if r == 0 || r > top - 1 {
        return Err(invalid(format!("r must lie in 1..={}", top - 1)));
    }
    if u1.is_empty() || u2.is_empty() || !u1.is_disjoint(u2) {
        return Err(invalid("U1 and U2 must be disjoint and nonempty"));
    }
    let rest: BTreeSet<Vertex> = (1..=top).filter(|x| *x != r && *x != r + 1).collect();
    if u1.union(u2).copied().collect::<BTreeSet<_>>() != rest {
        return Err(invalid("U1 and U2 must partition [n+2] minus {r, r+1}"));
    }
    let with = |s: &BTreeSet<Vertex>, x: Vertex| -> BTreeSet<Vertex> {
        s.iter().copied().chain([x]).collect()
    };
    let lhs = tc(engine, &[u1.clone(), BTreeSet::from([r]), u2.clone()]);
    let plus = tc(engine, &[with(u1, r), with(u2, r + 1)]);
    let minus = tc(engine, &[with(u1, r + 1), with(u2, r)]);
    let params = json!({ "n": n, "r": r, "U1": u1, "U2": u2 });
    Ok(VerificationReport::compare(
        "lemma71",
        params,
        lhs,
        &plus - &minus,
    ))
}

/// The middle-vertex identity above for every `n` in `2..=max_n`, every `r` and every split.
pub fn lemma_7_1_sweep(max_n: usize, engine: &TutteEngine) -> Vec<VerificationReport> {
    let mut instances = Vec::new();
    for n in 2..=max_n {
        let top = n as Vertex + 2;
        for r in 1..top {
            let rest: Vec<Vertex> = (1..=top).filter(|x| *x != r && *x != r + 1).collect();
            for size in 1..rest.len() {
                for u1 in rest.iter().copied().combinations(size) {
                    let u1: BTreeSet<Vertex> = u1.into_iter().collect();
                    let u2: BTreeSet<Vertex> =
                        rest.iter().copied().filter(|x| !u1.contains(x)).collect();
                    instances.push((n, r, u1, u2));
                }
            }
        }
    }
    instances
        .par_iter()
        .map(|(n, r, u1, u2)| verify_lemma_7_1(*n, *r, u1, u2, engine).expect("valid instance"))
        .collect()
}

fn check_interval_two_tier(g: &TieredGraph) -> Result<Vertex> {
    let k = g.vertices().len() as Vertex;
    if g.tier_count() != 2 || g.vertices().iter().copied().ne(1..=k) {
        return Err(invalid("expected two tiers on an interval [1, k]"));
    }
    Ok(k)
}

/// `(a₁, a₂)`: the number of `r` with `r ∈ V_i`, `r+1 ∈ V_{3-i}`.
pub fn a_stats(g: &TieredGraph) -> Result<(usize, usize)> {
    let k = check_interval_two_tier(g)?;
    let mut a = [0usize; 2];
    for r in 1..k {
        let (s, t) = (g.tier(r).expect("tiered"), g.tier(r + 1).expect("tiered"));
        if s != t {
            a[s - 1] += 1;
        }
    }
    Ok((a[0], a[1]))
}

/// The maximal runs of consecutive labels lying in one tier.
pub fn tier_blocks(g: &TieredGraph) -> Result<Vec<BTreeSet<Vertex>>> {
    let k = check_interval_two_tier(g)?;
    let mut blocks: Vec<BTreeSet<Vertex>> = Vec::new();
    for r in 1..=k {
        match blocks.last_mut() {
            Some(b) if g.tier(r) == g.tier(r - 1) => {
                b.insert(r);
            }
            _ => blocks.push(BTreeSet::from([r])),
        }
    }
    Ok(blocks)
}

/// `a₁ − a₂ = 1` for every connected member of `CT_{[n+2],(a,b)}`, all
/// two-part `(a, b)`.
pub fn verify_lemma_7_2(n: usize) -> VerificationReport {
    let universe = interval(n + 2);
    let mut held = 0;
    let mut total = 0;
    let mut witness = None;
    for p1 in 1..=n + 1 {
        let p = OrderedPartition::new(vec![p1, n + 2 - p1]).expect("positive parts");
        for g in enumerate_complete_family(&universe, &p).expect("sizes match") {
            if !g.graph().is_connected() {
                continue;
            }
            total += 1;
            let (a1, a2) = a_stats(&g).expect("interval labels");
            if a1 == a2 + 1 {
                held += 1;
            } else if witness.is_none() {
                witness = Some(json!({ "graph": tiered_value(&g), "a1": a1, "a2": a2 }));
            }
        }
    }
    VerificationReport::counts("lemma72", json!({ "n": n }), held, total).with_witness(witness)
}

/// Replays the chain `A = B = C` behind `P_{(1,p₁,p₂)} = P_{(p₁+1,p₂+1)}`:
/// `A` sums the right side of [`verify_lemma_7_1`] over `r` and `(U₁, U₂)`, `B` is
/// `Σ (a₁ − a₂)·T^c` over `CT^c_{(p₁+1,p₂+1)}`, and `C = P_{(p₁,1,p₂)}`.
/// `lhs = A`, `rhs = B`; the report fails unless `C` matches as well.
pub fn replay_eq_7_4(
    p1: usize,
    p2: usize,
    engine: &TutteEngine,
    cache: &WeightCache,
) -> Result<VerificationReport> {
    if p1 == 0 || p2 == 0 {
        return Err(invalid("p1 and p2 must be positive"));
    }
    let n = p1 + p2;
    let top = n as Vertex + 2;
    let mut terms = Vec::new();
    for r in 1..top {
        let rest: BTreeSet<Vertex> = (1..=top).filter(|x| *x != r && *x != r + 1).collect();
        for classes in ordered_set_partitions(&rest, &[p1, p2]) {
            terms.push((r, classes[0].clone(), classes[1].clone()));
        }
    }
    let a: UniPoly = terms
        .par_iter()
        .map(|(r, u1, u2)| {
            let with = |s: &BTreeSet<Vertex>, x: Vertex| -> BTreeSet<Vertex> {
                s.iter().copied().chain([x]).collect()
            };
            &tc(engine, &[with(u1, *r), with(u2, r + 1)])
                - &tc(engine, &[with(u1, r + 1), with(u2, *r)])
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let big = OrderedPartition::new(vec![p1 + 1, p2 + 1])?;
    let b: UniPoly = enumerate_complete_family(&interval(n + 2), &big)?
        .iter()
        .filter(|g| g.graph().is_connected())
        .map(|g| {
            let (a1, a2) = a_stats(g).expect("interval labels");
            engine
                .tutte_c(g.graph())
                .scalar_mul(&(BigInt::from(a1) - BigInt::from(a2)))
        })
        .sum();
    let c = cache.get(&OrderedPartition::new(vec![p1, 1, p2])?);
    let params = json!({ "p1": p1, "p2": p2 });
    let report = VerificationReport::compare("eq74", params, a.clone(), b.clone());
    let witness = (a != c || b != c)
        .then(|| json!({ "A": poly_value(&a), "B": poly_value(&b), "C": poly_value(&c) }));
    Ok(report.with_witness(witness))
}

/// `P_{(1,p₁,p₂)} = P_{(p₁+1,p₂+1)}`, each side from tree weights, with the
/// replay of [`replay_eq_7_4`] folded into the verdict.
pub fn verify_theorem_1_4(
    p1: usize,
    p2: usize,
    engine: &TutteEngine,
    cache: &WeightCache,
) -> Result<VerificationReport> {
    let replay = replay_eq_7_4(p1, p2, engine, cache)?;
    let lhs = cache.get(&OrderedPartition::new(vec![1, p1, p2])?);
    let rhs = cache.get(&OrderedPartition::new(vec![p1 + 1, p2 + 1])?);
    let report = VerificationReport::compare("thm14", json!({ "p1": p1, "p2": p2 }), lhs, rhs);
    let witness = (!replay.pass).then(|| serde_json::to_value(&replay).expect("reports serialize"));
    Ok(report.with_witness(witness))
}

/// Re-derives `P_p = P_{π_r(p)}` through the two-tier identity: members of
/// `CT_p` are grouped by the host `H` left after deleting the edges inside
/// tiers `r` and `r+1` (0-based `r`). Each block must satisfy the two-tier
/// identity, and the block sums must reassemble `P_p` and `P_{π_r(p)}` as
/// computed from tree weights. `lhs` is the reassembled swapped side, `rhs`
/// is `P_p`.
pub fn verify_reduction(
    p: &OrderedPartition,
    r: usize,
    engine: &TutteEngine,
    cache: &WeightCache,
) -> Result<VerificationReport> {
    let swapped = p.swap_adjacent(r)?;
    let parts = p.parts();
    let mut merged: Vec<usize> = parts[..r].to_vec();
    merged.push(parts[r] + parts[r + 1]);
    merged.extend_from_slice(&parts[r + 2..]);
    let pair = OrderedPartition::new(vec![parts[r], parts[r + 1]])?;
    let universe = interval(p.total());
    let blocks = ordered_set_partitions(&universe, &merged);
    let sums: Vec<(UniPoly, UniPoly, Multigraph)> = blocks
        .par_iter()
        .map(|classes| {
            let host = complete_tiered_graph(classes)
                .expect("nonempty disjoint classes")
                .into_graph();
            let side = |q: &OrderedPartition| -> UniPoly {
                complete_quasi_family(&host, &classes[r], q)
                    .expect("U lies in V(H)")
                    .iter()
                    .map(|g| engine.tutte_c(g.combined()))
                    .sum()
            };
            (side(&pair), side(&pair.reversed()), host)
        })
        .collect();
    let mut left = UniPoly::zero();
    let mut right = UniPoly::zero();
    let mut witness = None;
    for (l, rr, host) in &sums {
        left += l;
        right += rr;
        if l != rr && witness.is_none() {
            witness = Some(
                json!({ "host": graph_value(host), "p_side": poly_value(l), "swapped_side": poly_value(rr) }),
            );
        }
    }
    let direct = cache.get(p);
    let direct_swapped = cache.get(&swapped);
    if witness.is_none() && (left != direct || right != direct_swapped) {
        witness = Some(json!({
            "blocks_p": poly_value(&left), "direct_p": poly_value(&direct),
            "blocks_swapped": poly_value(&right), "direct_swapped": poly_value(&direct_swapped),
        }));
    }
    let params = json!({ "p": p.to_string(), "r": r + 1 });
    Ok(VerificationReport::compare("reduction", params, right, direct).with_witness(witness))
}

/// Connected simple graphs on `1..=max_vertices` vertices, one per
/// isomorphism class.
pub fn connected_corpus(max_vertices: u32) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for k in 1..=max_vertices {
        let pairs: Vec<(Vertex, Vertex)> = (1..=k).tuple_combinations().collect();
        let graphs: Vec<Multigraph> = (0u64..1 << pairs.len())
            .into_par_iter()
            .filter_map(|mask| {
                let chosen = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| *e);
                let g = Multigraph::from_edge_list(1..=k, chosen).expect("labels are positive");
                g.is_connected().then_some(g)
            })
            .collect();
        let mut seen = BTreeMap::new();
        for g in graphs {
            seen.entry(canonical_key(&g)).or_insert(g);
        }
        out.extend(seen.into_values());
    }
    out
}
