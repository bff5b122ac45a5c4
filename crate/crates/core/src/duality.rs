//! Two-tier duality: `G ↦ G'`, quasi-tiered trees `T = E₀ ∪ F ↦ T*`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{invalid, Result};
use crate::graph::{EdgeSet, Multigraph, QuasiTieredGraph, TieredGraph, Vertex};

fn check_two_tiers(g: &TieredGraph) -> Result<()> {
    if g.tier_count() != 2 {
        return Err(invalid(format!(
            "duals are defined for two tiers, got {}",
            g.tier_count()
        )));
    }
    Ok(())
}

/// Reverses one vertex set: `x_r ↦ x_{s+1-r}` on the sorted labels.
fn reversal(part: &BTreeSet<Vertex>) -> BTreeMap<Vertex, Vertex> {
    part.iter()
        .copied()
        .zip(part.iter().rev().copied())
        .collect()
}

/// Dual of the part of `g` on each of `parts`, which must be unions of
/// components.
fn dual_on(g: &TieredGraph, parts: &[BTreeSet<Vertex>]) -> Result<TieredGraph> {
    let mut tiers = BTreeMap::new();
    let mut pairs = Vec::new();
    for part in parts {
        let flip = reversal(part);
        for (&x, &image) in &flip {
            tiers.insert(x, 3 - g.tier(image).expect("vertex has a tier"));
        }
        for e in g.graph().edges() {
            if part.contains(&e.u) {
                let (a, b) = (flip[&e.u], flip[&e.v]);
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    pairs.sort_unstable();
    let graph = Multigraph::from_edge_list(tiers.keys().copied(), pairs)?;
    TieredGraph::new(graph, tiers, 2)
}

/// `G'` for a connected two-tier graph.
pub fn dual_connected(g: &TieredGraph) -> Result<TieredGraph> {
    check_two_tiers(g)?;
    if !g.graph().is_connected() || g.vertices().is_empty() {
        return Err(invalid("dual_connected needs a connected graph"));
    }
    dual_on(g, &[g.vertices().clone()])
}

/// `G'` taken componentwise. Edge ids are fresh, in sorted pair order.
pub fn dual_graph(g: &TieredGraph) -> Result<TieredGraph> {
    check_two_tiers(g)?;
    dual_on(g, &g.graph().components())
}

/// `CT(Q)`: the complete tiered graph with the tier classes of `Q`. Empty
/// classes are kept, so the tier count is preserved.
pub fn ct_of(q: &TieredGraph) -> TieredGraph {
    let tiers = q.tier_map();
    let pairs: Vec<(Vertex, Vertex)> = tiers
        .keys()
        .copied()
        .tuple_combinations()
        .filter(|(u, v)| tiers[u] < tiers[v])
        .collect();
    let graph = Multigraph::from_edge_list(tiers.keys().copied(), pairs)
        .expect("vertices of a valid tiered graph");
    TieredGraph::new(graph, tiers.clone(), q.tier_count()).expect("completion keeps the axioms")
}

/// A quasi-tiered tree `T = E₀ ∪ F`: host edges `E₀ ⊆ E(H)` plus a two-tier
/// forest `F` on `U ⊆ V(H)`, together spanning `V(H)` as a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiTree {
    host: Multigraph,
    e0: EdgeSet,
    forest: TieredGraph,
}

impl QuasiTree {
    pub fn new(host: Multigraph, e0: EdgeSet, forest: TieredGraph) -> Result<Self> {
        check_two_tiers(&forest)?;
        if let Some(id) = e0.iter().find(|id| host.edge(**id).is_none()) {
            return Err(invalid(format!("E0 edge {id} is not an edge of H")));
        }
        if !forest.vertices().is_subset(host.vertices()) {
            return Err(invalid("the tiered forest must live on a subset of V(H)"));
        }
        let t = Self { host, e0, forest };
        if !t.combined().is_tree() {
            return Err(invalid("E0 together with F is not a spanning tree of V(H)"));
        }
        Ok(t)
    }

    /// Splits a spanning tree of `H ∪ Q` into `E₀` and `F`.
    pub fn from_spanning_tree(g: &QuasiTieredGraph, tree: &EdgeSet) -> Result<Self> {
        let e0: EdgeSet = tree
            .iter()
            .copied()
            .filter(|id| g.is_host_edge(*id))
            .collect();
        let mut forest_ids = EdgeSet::new();
        for id in tree.iter().filter(|id| !g.is_host_edge(**id)) {
            let e = g
                .combined()
                .edge(*id)
                .ok_or(crate::error::Error::UnknownEdge(*id))?;
            let own = g
                .tiered()
                .edge_between(e.u, e.v)
                .expect("non-host edges of H ∪ Q come from Q");
            forest_ids.insert(own);
        }
        let forest = g.tiered().with_edges(&forest_ids)?;
        Self::new(g.host().clone(), e0, forest)
    }

    pub fn host(&self) -> &Multigraph {
        &self.host
    }

    pub fn e0(&self) -> &EdgeSet {
        &self.e0
    }

    pub fn forest(&self) -> &TieredGraph {
        &self.forest
    }

    /// `H⟨E₀⟩ ∪ F` as one multigraph; `F` edges get ids above `H`'s.
    pub fn combined(&self) -> Multigraph {
        self.host
            .spanning_subgraph(&self.e0)
            .expect("E0 is checked against H")
            .union_disjoint(self.forest.graph())
            .0
    }

    /// Ids of this tree's edges inside `g`, or an error if `g` has different
    /// tier classes or lacks an edge.
    pub fn edge_ids_in(&self, g: &QuasiTieredGraph) -> Result<EdgeSet> {
        if g.tiered().tier_map() != self.forest.tier_map() {
            return Err(invalid("tier classes differ from the graph's"));
        }
        let mut ids = self.e0.clone();
        for (u, v) in self.forest.edge_pairs() {
            let id = g
                .tiered_edge_id(u, v)
                .ok_or_else(|| invalid(format!("edge {u}{v} is not in the graph")))?;
            ids.insert(id);
        }
        Ok(ids)
    }

    /// `H ∪ CT(F)`, the unique member of `CT_{U,p}(H)` containing this tree.
    pub fn containing_graph(&self) -> QuasiTieredGraph {
        QuasiTieredGraph::new(self.host.clone(), ct_of(&self.forest)).expect("U lies inside V(H)")
    }
}

/// `T* = E₀ ∪ F'`.
pub fn dual_quasi_tree(t: &QuasiTree) -> Result<QuasiTree> {
    QuasiTree::new(t.host.clone(), t.e0.clone(), dual_graph(&t.forest)?)
}

/// `G*_T = H ∪ CT(F')`.
pub fn host_graph(t: &QuasiTree) -> Result<QuasiTieredGraph> {
    Ok(dual_quasi_tree(t)?.containing_graph())
}
