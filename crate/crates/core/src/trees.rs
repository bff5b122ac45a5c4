//! Tiered trees and their weight polynomials.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::activity::{external_activity, spanning_trees, EdgeOrder};
use crate::error::{invalid, Result};
use crate::graph::{
    complete_tiered_graph, enumerate_complete_family, interval, Multigraph, OrderedPartition,
    TieredGraph, Vertex,
};
use crate::poly::UniPoly;

/// A tiered graph that is a tree. Equality includes the tier classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieredTree(TieredGraph);

impl TieredTree {
    pub fn new(g: TieredGraph) -> Result<Self> {
        if !g.graph().is_tree() {
            return Err(invalid("a tiered tree must be connected and acyclic"));
        }
        Ok(Self(g))
    }

    pub fn as_tiered(&self) -> &TieredGraph {
        &self.0
    }

    pub fn into_tiered(self) -> TieredGraph {
        self.0
    }

    pub fn graph(&self) -> &Multigraph {
        self.0.graph()
    }

    /// `CT(T)`: the complete tiered graph on the tree's tier classes.
    pub fn complete_graph(&self) -> TieredGraph {
        let classes: Vec<BTreeSet<Vertex>> = self
            .0
            .tier_classes()
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        complete_tiered_graph(&classes).expect("tier classes of a valid tree")
    }

    /// The recursive weight.
    pub fn weight(&self) -> usize {
        weight_recursive(self)
    }
}

/// `T_{U,p}`: spanning trees of every member of `CT_{U,p}`, with tier classes
/// kept. Ordered by family member, then by edge ids.
pub fn enumerate_tiered_trees(
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<Vec<TieredTree>> {
    let family = enumerate_complete_family(universe, p)?;
    let nested: Vec<Vec<TieredTree>> = family
        .par_iter()
        .map(|g| {
            spanning_trees(g.graph())
                .into_iter()
                .map(|ids| TieredTree(g.with_edges(&ids).expect("tree edges lie in G")))
                .collect()
        })
        .collect();
    Ok(nested.into_iter().flatten().collect())
}

/// `w(T)` by deleting the least vertex and recursing on the components.
pub fn weight_recursive(tree: &TieredTree) -> usize {
    let tiers = tree.0.tier_map();
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
        tree.0.vertices().iter().map(|v| (*v, Vec::new())).collect();
    for e in tree.graph().edges() {
        adj.get_mut(&e.u).expect("endpoint").push(e.v);
        adj.get_mut(&e.v).expect("endpoint").push(e.u);
    }
    let all: BTreeSet<Vertex> = tree.0.vertices().clone();
    subtree_weight(&all, &adj, tiers)
}

fn subtree_weight(
    part: &BTreeSet<Vertex>,
    adj: &BTreeMap<Vertex, Vec<Vertex>>,
    tiers: &BTreeMap<Vertex, usize>,
) -> usize {
    let Some(&v) = part.iter().next() else {
        return 0;
    };
    if part.len() == 1 {
        return 0;
    }
    let mut total = 0;
    let mut seen = BTreeSet::from([v]);
    for &u in &adj[&v] {
        if !part.contains(&u) || seen.contains(&u) {
            continue;
        }
        // component of T - v containing u
        let mut comp = BTreeSet::from([u]);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &y in &adj[&x] {
                if y != v && part.contains(&y) && comp.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.extend(comp.iter().copied());
        let w_i = comp
            .iter()
            .filter(|x| **x < u && tiers[*x] > tiers[&v])
            .count();
        total += w_i + subtree_weight(&comp, adj, tiers);
    }
    total
}

/// `w(T)` as the external activity of `T` in `CT(T)` under the
/// lexicographic edge order.
pub fn weight_via_activity(tree: &TieredTree) -> usize {
    let ct = tree.complete_graph();
    let order = EdgeOrder::lexicographic(ct.graph()).expect("complete tiered graphs are simple");
    let ids = tree
        .graph()
        .edges()
        .iter()
        .map(|e| ct.edge_between(e.u, e.v).expect("tree edge lies in CT(T)"))
        .collect();
    external_activity(ct.graph(), &ids, &order).expect("a tree is a forest of CT(T)")
}

/// `P_p(q)` over `U = [n]`.
pub fn weight_polynomial(p: &OrderedPartition) -> UniPoly {
    weight_polynomial_on(&interval(p.total()), p).expect("sizes match by construction")
}

/// `Σ_{T ∈ T_{U,p}} q^{w(T)}`.
pub fn weight_polynomial_on(universe: &BTreeSet<Vertex>, p: &OrderedPartition) -> Result<UniPoly> {
    let family = enumerate_complete_family(universe, p)?;
    let counts: Vec<BTreeMap<usize, u64>> = family
        .par_iter()
        .map(|g| {
            let mut hist = BTreeMap::new();
            for ids in spanning_trees(g.graph()) {
                let tree = TieredTree(g.with_edges(&ids).expect("tree edges lie in G"));
                *hist.entry(weight_recursive(&tree)).or_insert(0u64) += 1;
            }
            hist
        })
        .collect();
    let mut total: BTreeMap<usize, u64> = BTreeMap::new();
    for hist in counts {
        for (w, c) in hist {
            *total.entry(w).or_insert(0) += c;
        }
    }
    Ok(UniPoly::from_terms(
        total.into_iter().map(|(w, c)| (w as u32, c.into())),
    ))
}
