//! Edge orders, spanning-tree enumeration, and internal/external activity.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dsu::Dsu;
use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeId, EdgeSet, Multigraph, QuasiTieredGraph, Vertex};
use crate::poly::BiPoly;

/// Integer pair compared lexicographically. Stands in for a real weight.
pub type OrderKey = (i64, i64);

/// An injective weight function on edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeOrder {
    keys: HashMap<EdgeId, OrderKey>,
}

impl EdgeOrder {
    pub fn from_keys(keys: impl IntoIterator<Item = (EdgeId, OrderKey)>) -> Result<Self> {
        let mut map = HashMap::new();
        let mut seen = BTreeSet::new();
        for (id, k) in keys {
            if map.insert(id, k).is_some() {
                return Err(invalid(format!("edge {id} weighted twice")));
            }
            if !seen.insert(k) {
                return Err(invalid(format!("weight {k:?} is used twice")));
            }
        }
        Ok(Self { keys: map })
    }

    pub fn key(&self, id: EdgeId) -> Option<OrderKey> {
        self.keys.get(&id).copied()
    }

    fn key_of(&self, id: EdgeId) -> OrderKey {
        self.keys[&id]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Errors unless every edge of `g` is weighted.
    pub fn check_covers(&self, g: &Multigraph) -> Result<()> {
        match g.edges().iter().find(|e| !self.keys.contains_key(&e.id)) {
            Some(e) => Err(invalid(format!("edge {} has no weight", e.id))),
            None => Ok(()),
        }
    }

    /// Orders edges by id.
    pub fn by_id(g: &Multigraph) -> Self {
        Self {
            keys: g
                .edges()
                .iter()
                .map(|e| (e.id, (e.id.0 as i64, 0)))
                .collect(),
        }
    }

    /// Lexicographic order on `(min endpoint, max endpoint)`. Needs a simple
    /// graph.
    pub fn lexicographic(g: &Multigraph) -> Result<Self> {
        Self::from_keys(
            g.edges()
                .iter()
                .map(|e| (e.id, (i64::from(e.u), i64::from(e.v)))),
        )
    }

    /// A uniformly random order, reproducible from the seed.
    pub fn random(g: &Multigraph, seed: u64) -> Self {
        let mut ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
        ids.sort();
        ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self {
            keys: ids
                .into_iter()
                .enumerate()
                .map(|(rank, id)| (id, (rank as i64, 0)))
                .collect(),
        }
    }

    /// `ω₁`: host edges get `-1, -2, ...` in construction order; a tiered
    /// edge `uv` (`u < v`) gets `(u, v)`, realising `u + v/N`.
    pub fn omega_one_parts(
        host_edges: &[EdgeId],
        tiered_edges: impl IntoIterator<Item = (EdgeId, Vertex, Vertex)>,
    ) -> Result<Self> {
        Self::from_keys(
            host_keys(host_edges).chain(tiered_edges.into_iter().map(|(id, a, b)| {
                let (u, v) = (a.min(b), a.max(b));
                (id, (i64::from(u), i64::from(v)))
            })),
        )
    }

    /// `ω₂`: equal to `ω₁` on host edges; a tiered edge `uv` (`u < v`) gets
    /// `(N+1-v, N+1-u)`, realising `(N+1-v) + (N+1-u)/N`.
    pub fn omega_two_parts(
        host_edges: &[EdgeId],
        tiered_edges: impl IntoIterator<Item = (EdgeId, Vertex, Vertex)>,
        n_max: Vertex,
    ) -> Result<Self> {
        let top = i64::from(n_max) + 1;
        Self::from_keys(
            host_keys(host_edges).chain(tiered_edges.into_iter().map(|(id, a, b)| {
                let (u, v) = (i64::from(a.min(b)), i64::from(a.max(b)));
                (id, (top - v, top - u))
            })),
        )
    }

    pub fn omega_one(g: &QuasiTieredGraph) -> Result<Self> {
        let (host, tiered) = quasi_parts(g);
        Self::omega_one_parts(&host, tiered)
    }

    pub fn omega_two(g: &QuasiTieredGraph) -> Result<Self> {
        let (host, tiered) = quasi_parts(g);
        let n_max = g.universe().iter().next_back().copied().unwrap_or(0);
        Self::omega_two_parts(&host, tiered, n_max)
    }

    /// The least edge of `edges` under this order.
    pub fn min_edge(&self, edges: impl IntoIterator<Item = EdgeId>) -> Option<EdgeId> {
        edges.into_iter().min_by_key(|id| self.key_of(*id))
    }
}

fn host_keys(host_edges: &[EdgeId]) -> impl Iterator<Item = (EdgeId, OrderKey)> + '_ {
    host_edges
        .iter()
        .enumerate()
        .map(|(i, id)| (*id, (-1 - i as i64, 0)))
}

fn quasi_parts(g: &QuasiTieredGraph) -> (Vec<EdgeId>, Vec<(EdgeId, Vertex, Vertex)>) {
    let host: Vec<EdgeId> = g.host().edges().iter().map(|e| e.id).collect();
    let tiered = g
        .tiered()
        .edge_pairs()
        .into_iter()
        .map(|(u, v)| {
            (
                g.tiered_edge_id(u, v).expect("tiered edge is present"),
                u,
                v,
            )
        })
        .collect();
    (host, tiered)
}

/// All spanning trees as edge-id sets. A disconnected graph has none.
/// Parallel edges give distinct trees; loops are never used.
pub fn spanning_trees(g: &Multigraph) -> Vec<EdgeSet> {
    let index: HashMap<Vertex, usize> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    let n = g.vertex_count();
    if n == 0 {
        return vec![EdgeSet::new()];
    }
    let mut edges: Vec<(usize, usize, EdgeId)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (index[&e.u], index[&e.v], e.id))
        .collect();
    edges.sort_by_key(|e| e.2);
    if !g.is_connected() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n - 1);
    grow(&edges, 0, n - 1, &mut Dsu::new(n), &mut chosen, &mut out);
    out
}

/// Every acyclic edge subset (spanning forest, not necessarily maximal),
/// the empty set first.
pub fn forests(g: &Multigraph) -> Vec<EdgeSet> {
    let index: HashMap<Vertex, usize> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    let mut edges: Vec<(usize, usize, EdgeId)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (index[&e.u], index[&e.v], e.id))
        .collect();
    edges.sort_by_key(|e| e.2);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    branch(
        &edges,
        0,
        &mut Dsu::new(g.vertex_count()),
        &mut chosen,
        &mut out,
    );
    out
}

fn branch(
    edges: &[(usize, usize, EdgeId)],
    at: usize,
    dsu: &mut Dsu,
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<EdgeSet>,
) {
    if at == edges.len() {
        out.push(chosen.iter().copied().collect());
        return;
    }
    branch(edges, at + 1, dsu, chosen, out);
    let (a, b, id) = edges[at];
    if dsu.find(a) != dsu.find(b) {
        let mut with = dsu.clone();
        with.union(a, b);
        chosen.push(id);
        branch(edges, at + 1, &mut with, chosen, out);
        chosen.pop();
    }
}

fn grow(
    edges: &[(usize, usize, EdgeId)],
    at: usize,
    need: usize,
    dsu: &mut Dsu,
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<EdgeSet>,
) {
    if chosen.len() == need {
        out.push(chosen.iter().copied().collect());
        return;
    }
    if edges.len() - at < need - chosen.len() {
        return;
    }
    let (a, b, id) = edges[at];
    if dsu.find(a) != dsu.find(b) {
        let mut with = dsu.clone();
        with.union(a, b);
        chosen.push(id);
        grow(edges, at + 1, need, &mut with, chosen, out);
        chosen.pop();
    }
    grow(edges, at + 1, need, dsu, chosen, out);
}

/// Rooted view of a forest for path queries.
struct ForestPaths {
    parent: HashMap<Vertex, (Vertex, EdgeId)>,
    depth: HashMap<Vertex, usize>,
    root: HashMap<Vertex, Vertex>,
}

impl ForestPaths {
    fn new(g: &Multigraph, forest: &EdgeSet) -> Result<Self> {
        for id in forest {
            if g.edge(*id).is_none() {
                return Err(Error::UnknownEdge(*id));
            }
        }
        let sub = g.spanning_subgraph(forest)?;
        if !sub.is_acyclic() {
            return Err(invalid("the given edge set is not a forest"));
        }
        let mut adj: HashMap<Vertex, Vec<(Vertex, EdgeId)>> = HashMap::new();
        for e in sub.edges() {
            adj.entry(e.u).or_default().push((e.v, e.id));
            adj.entry(e.v).or_default().push((e.u, e.id));
        }
        let mut paths = ForestPaths {
            parent: HashMap::new(),
            depth: HashMap::new(),
            root: HashMap::new(),
        };
        for &r in g.vertices() {
            if paths.depth.contains_key(&r) {
                continue;
            }
            paths.depth.insert(r, 0);
            paths.root.insert(r, r);
            let mut stack = vec![r];
            while let Some(x) = stack.pop() {
                for &(y, id) in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                    if !paths.depth.contains_key(&y) {
                        paths.depth.insert(y, paths.depth[&x] + 1);
                        paths.parent.insert(y, (x, id));
                        paths.root.insert(y, r);
                        stack.push(y);
                    }
                }
            }
        }
        Ok(paths)
    }

    /// Forest edges on the path between `a` and `b`, if connected.
    fn path(&self, a: Vertex, b: Vertex) -> Option<Vec<EdgeId>> {
        if self.root[&a] != self.root[&b] {
            return None;
        }
        let (mut x, mut y) = (a, b);
        let mut out = Vec::new();
        while self.depth[&x] > self.depth[&y] {
            let (p, id) = self.parent[&x];
            out.push(id);
            x = p;
        }
        while self.depth[&y] > self.depth[&x] {
            let (p, id) = self.parent[&y];
            out.push(id);
            y = p;
        }
        while x != y {
            let (px, ix) = self.parent[&x];
            let (py, iy) = self.parent[&y];
            out.push(ix);
            out.push(iy);
            x = px;
            y = py;
        }
        Some(out)
    }
}

/// Number of edges outside `forest` that close a cycle with it and are
/// `ω`-least on that cycle. Loops always count.
pub fn external_activity(g: &Multigraph, forest: &EdgeSet, order: &EdgeOrder) -> Result<usize> {
    order.check_covers(g)?;
    let paths = ForestPaths::new(g, forest)?;
    let mut count = 0;
    for e in g.edges().iter().filter(|e| !forest.contains(&e.id)) {
        if let Some(path) = paths.path(e.u, e.v) {
            let k = order.key_of(e.id);
            if path.iter().all(|f| k < order.key_of(*f)) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Number of forest edges `e` with `ω(e) < ω(e')` for every outside edge
/// `e'` whose cycle with the forest passes through `e`.
pub fn internal_activity(g: &Multigraph, forest: &EdgeSet, order: &EdgeOrder) -> Result<usize> {
    order.check_covers(g)?;
    let paths = ForestPaths::new(g, forest)?;
    let mut cover: HashMap<EdgeId, OrderKey> = HashMap::new();
    for e in g.edges().iter().filter(|e| !forest.contains(&e.id)) {
        if let Some(path) = paths.path(e.u, e.v) {
            let k = order.key_of(e.id);
            for f in path {
                let slot = cover.entry(f).or_insert(k);
                *slot = (*slot).min(k);
            }
        }
    }
    Ok(forest
        .iter()
        .filter(|f| cover.get(f).is_none_or(|c| order.key_of(**f) < *c))
        .count())
}

/// `Σ_T x^{ia(T)} y^{ea(T)}` over spanning trees of a connected graph.
pub fn tutte_via_activities(g: &Multigraph, order: &EdgeOrder) -> Result<BiPoly> {
    if !g.is_connected() {
        return Err(invalid("activity expansion needs a connected graph"));
    }
    order.check_covers(g)?;
    let mut out = BiPoly::zero();
    for tree in spanning_trees(g) {
        let ia = internal_activity(g, &tree, order)? as u32;
        let ea = external_activity(g, &tree, order)? as u32;
        out += &BiPoly::monomial(ia, ea, 1);
    }
    Ok(out)
}

/// Right-hand side of the split formula for external activity:
/// `ea(G₁•F, T•F) + ea(G₂, F)` with `F = T ∩ E₂`, where every edge of `E₁`
/// is `ω`-below every edge of `E₂`.
///
/// With `drop_isolated`, the vertices isolated in `G⟨E₂⟩` are removed from
/// `G₂` and `F` first.
pub fn ea_decomposed(
    g: &Multigraph,
    tree: &EdgeSet,
    low_edges: &EdgeSet,
    order: &EdgeOrder,
    drop_isolated: bool,
) -> Result<usize> {
    order.check_covers(g)?;
    for id in low_edges {
        if g.edge(*id).is_none() {
            return Err(Error::UnknownEdge(*id));
        }
    }
    let high_edges: EdgeSet = g.edge_ids().difference(low_edges).copied().collect();
    let low_max = low_edges.iter().map(|id| order.key_of(*id)).max();
    let high_min = high_edges.iter().map(|id| order.key_of(*id)).min();
    if let (Some(lo), Some(hi)) = (low_max, high_min) {
        if lo > hi {
            return Err(invalid("every low edge must precede every high edge"));
        }
    }
    let forest_ids: EdgeSet = tree.intersection(&high_edges).copied().collect();
    let mut g2 = g.spanning_subgraph(&high_edges)?;
    let mut forest = g.spanning_subgraph(&forest_ids)?;
    if drop_isolated {
        let mut isolated = g2.isolated_vertices();
        if isolated.len() == g2.vertex_count() {
            // S must be a proper subset of V(G)
            let keep = *isolated.iter().next().expect("graph is nonempty");
            isolated.remove(&keep);
        }
        g2 = g2.remove_vertices(&isolated);
        forest = forest.remove_vertices(&isolated);
    }
    let g1 = g.spanning_subgraph(low_edges)?;
    let low_tree: EdgeSet = tree.intersection(low_edges).copied().collect();
    let merged = g1.merge_contract(&forest)?;
    let first = external_activity(&merged, &low_tree, order)?;
    let second = external_activity(&g2, &forest_ids, order)?;
    Ok(first + second)
}
