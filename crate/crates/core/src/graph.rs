//! Multigraphs with stable edge identities, tiered graphs, and the complete
//! tiered graph families built on top of them.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{invalid, Error, Result};

/// Vertex labels are positive integers.
pub type Vertex = u32;

/// Opaque edge identity. Survives deletion and contraction unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u64);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub type EdgeSet = BTreeSet<EdgeId>;

/// An edge record. Endpoints are stored with `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn new(id: EdgeId, a: Vertex, b: Vertex) -> Self {
        Self {
            id,
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A finite multigraph: loops and parallel edges allowed, every edge has a
/// distinct [`EdgeId`].
///
/// Edges keep their insertion order; host-edge orders are derived from it.
#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    vertices: BTreeSet<Vertex>,
    edges: Vec<Edge>,
    next_id: u64,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        Ok(g)
    }

    /// Builds a graph from explicit edge records, validating ids and endpoints.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut g = Self::with_vertices(vertices)?;
        for e in edges {
            g.insert_edge(e)?;
        }
        Ok(g)
    }

    /// Builds a graph whose edges get ids `0, 1, ...` in the given order.
    pub fn from_edge_list(
        vertices: impl IntoIterator<Item = Vertex>,
        pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut g = Self::with_vertices(vertices)?;
        for (a, b) in pairs {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) -> Result<()> {
        if v == 0 {
            return Err(invalid("vertex labels must be positive"));
        }
        self.vertices.insert(v);
        Ok(())
    }

    /// Adds an edge with a freshly minted id.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<EdgeId> {
        let id = EdgeId(self.next_id);
        self.insert_edge(Edge::new(id, a, b))?;
        Ok(id)
    }

    pub fn insert_edge(&mut self, e: Edge) -> Result<()> {
        let e = Edge::new(e.id, e.u, e.v);
        if !self.vertices.contains(&e.u) || !self.vertices.contains(&e.v) {
            return Err(invalid(format!(
                "edge {} has an endpoint outside the vertex set",
                e.id
            )));
        }
        if self.edge(e.id).is_some() {
            return Err(invalid(format!("duplicate edge id {}", e.id)));
        }
        self.next_id = self.next_id.max(e.id.0 + 1);
        self.edges.push(e);
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The id the next [`Multigraph::add_edge`] would mint.
    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.next_id)
    }

    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut edges = self.edges.clone();
        edges.sort();
        edges
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|e| !e.is_loop() && seen.insert(e.endpoints()))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn delete_edge(&self, id: EdgeId) -> Result<Multigraph> {
        if self.edge(id).is_none() {
            return Err(Error::UnknownEdge(id));
        }
        let mut g = self.clone();
        g.edges.retain(|e| e.id != id);
        Ok(g)
    }

    /// Contracts a non-loop edge. The merged vertex keeps the smaller label.
    pub fn contract_edge(&self, id: EdgeId) -> Result<Multigraph> {
        let e = *self.edge(id).ok_or(Error::UnknownEdge(id))?;
        if e.is_loop() {
            return Err(Error::LoopContraction(id));
        }
        let (keep, gone) = (e.u, e.v);
        let mut g = self.clone();
        g.vertices.remove(&gone);
        g.edges.retain(|x| x.id != id);
        for x in &mut g.edges {
            let rename = |w: Vertex| if w == gone { keep } else { w };
            *x = Edge::new(x.id, rename(x.u), rename(x.v));
        }
        Ok(g)
    }

    /// All vertices, only the listed edges. Unknown ids are an error.
    pub fn spanning_subgraph(&self, ids: &EdgeSet) -> Result<Multigraph> {
        for id in ids {
            if self.edge(*id).is_none() {
                return Err(Error::UnknownEdge(*id));
            }
        }
        let mut g = self.clone();
        g.edges.retain(|e| ids.contains(&e.id));
        Ok(g)
    }

    /// Removes the given vertices and every edge incident with them.
    pub fn remove_vertices(&self, drop: &BTreeSet<Vertex>) -> Multigraph {
        let mut g = self.clone();
        g.vertices.retain(|v| !drop.contains(v));
        g.edges
            .retain(|e| !drop.contains(&e.u) && !drop.contains(&e.v));
        g
    }

    pub fn isolated_vertices(&self) -> BTreeSet<Vertex> {
        let mut touched = BTreeSet::new();
        for e in &self.edges {
            touched.insert(e.u);
            touched.insert(e.v);
        }
        self.vertices.difference(&touched).copied().collect()
    }

    /// Disjoint union of edge multisets: `other`'s edges get fresh ids above
    /// every id of `self`. Returns the union and the id map for `other`.
    pub fn union_disjoint(&self, other: &Multigraph) -> (Multigraph, HashMap<EdgeId, EdgeId>) {
        let mut g = self.clone();
        g.vertices.extend(other.vertices.iter().copied());
        let mut remap = HashMap::new();
        for e in &other.edges {
            let id = g
                .add_edge(e.u, e.v)
                .expect("endpoints were just added to the vertex set");
            remap.insert(e.id, id);
        }
        (g, remap)
    }

    fn index_map(&self) -> HashMap<Vertex, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i))
            .collect()
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let index = self.index_map();
        let mut dsu = Dsu::new(self.vertices.len());
        for e in &self.edges {
            dsu.union(index[&e.u], index[&e.v]);
        }
        let mut groups: BTreeMap<usize, BTreeSet<Vertex>> = BTreeMap::new();
        for (v, i) in &index {
            groups.entry(dsu.find(*i)).or_default().insert(*v);
        }
        let mut comps: Vec<_> = groups.into_values().collect();
        comps.sort_by_key(|c| *c.iter().next().expect("components are nonempty"));
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_acyclic(&self) -> bool {
        let index = self.index_map();
        let mut dsu = Dsu::new(self.vertices.len());
        self.edges
            .iter()
            .all(|e| dsu.union(index[&e.u], index[&e.v]))
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty() && self.is_acyclic() && self.is_connected()
    }

    /// A maximal spanning forest, greedy in edge order.
    pub fn spanning_forest(&self) -> EdgeSet {
        let index = self.index_map();
        let mut dsu = Dsu::new(self.vertices.len());
        self.edges
            .iter()
            .filter(|e| dsu.union(index[&e.u], index[&e.v]))
            .map(|e| e.id)
            .collect()
    }

    /// An edge is a bridge when deleting it increases the component count.
    pub fn is_bridge(&self, id: EdgeId) -> Result<bool> {
        let e = *self.edge(id).ok_or(Error::UnknownEdge(id))?;
        if e.is_loop() {
            return Ok(false);
        }
        let rest = self.delete_edge(id)?;
        Ok(rest.path_edges(e.u, e.v).is_none())
    }

    /// Edge ids along some path from `a` to `b` (BFS order), if one exists.
    /// In a forest the path is unique.
    pub fn path_edges(&self, a: Vertex, b: Vertex) -> Option<Vec<EdgeId>> {
        if a == b {
            return Some(Vec::new());
        }
        let mut adj: HashMap<Vertex, Vec<(Vertex, EdgeId)>> = HashMap::new();
        for e in &self.edges {
            if e.is_loop() {
                continue;
            }
            adj.entry(e.u).or_default().push((e.v, e.id));
            adj.entry(e.v).or_default().push((e.u, e.id));
        }
        let mut prev: HashMap<Vertex, (Vertex, EdgeId)> = HashMap::new();
        let mut queue = VecDeque::from([a]);
        let mut seen = BTreeSet::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &(y, id) in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(y) {
                    prev.insert(y, (x, id));
                    queue.push_back(y);
                }
            }
        }
        if !seen.contains(&b) {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = b;
        while cur != a {
            let (p, id) = prev[&cur];
            path.push(id);
            cur = p;
        }
        path.reverse();
        Some(path)
    }

    /// `G • F`: drop the edges shared with `F` (by id), then identify each
    /// component of `F` to its smallest vertex. Vertices of `G` outside `F`
    /// stay as they are.
    pub fn merge_contract(&self, f: &Multigraph) -> Result<Multigraph> {
        if let Some(v) = f.vertices.iter().find(|v| !self.vertices.contains(v)) {
            return Err(invalid(format!("vertex {v} of F is not a vertex of G")));
        }
        let shared: BTreeSet<EdgeId> = f.edges.iter().map(|e| e.id).collect();
        let mut rep: HashMap<Vertex, Vertex> = HashMap::new();
        for comp in f.components() {
            let root = *comp.iter().next().expect("components are nonempty");
            for v in comp {
                rep.insert(v, root);
            }
        }
        let rename = |v: Vertex| rep.get(&v).copied().unwrap_or(v);
        let mut g = Multigraph {
            vertices: self.vertices.iter().map(|v| rename(*v)).collect(),
            edges: Vec::new(),
            next_id: self.next_id,
        };
        for e in self.edges.iter().filter(|e| !shared.contains(&e.id)) {
            g.edges.push(Edge::new(e.id, rename(e.u), rename(e.v)));
        }
        Ok(g)
    }
}

/// Tier-size vector `(p_1, ..., p_m)` with every part positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition(Vec<usize>);

impl OrderedPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("an ordered partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(invalid("ordered partition parts must be positive"));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `π(p) = (p_{π(1)}, ..., p_{π(m)})` with `perm` 0-based.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..self.len()).collect::<Vec<_>>() {
            return Err(invalid("not a permutation of the part indices"));
        }
        Ok(Self(perm.iter().map(|i| self.0[*i]).collect()))
    }

    /// Exchanges parts `r` and `r + 1` (0-based `r`).
    pub fn swap_adjacent(&self, r: usize) -> Result<Self> {
        if r + 1 >= self.len() {
            return Err(invalid("adjacent swap index out of range"));
        }
        let mut parts = self.0.clone();
        parts.swap(r, r + 1);
        Ok(Self(parts))
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// Every ordered partition (composition) of `n`, in lexicographic order.
    pub fn all_of(n: usize) -> Vec<OrderedPartition> {
        fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<OrderedPartition>) {
            if left == 0 {
                out.push(OrderedPartition(cur.clone()));
                return;
            }
            for first in 1..=left {
                cur.push(first);
                rec(left - first, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    /// Parses `"2,2"` or `"(1,2,2)"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let parts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// A simple graph with a tiering map `t: V -> [m]`: every tier class is
/// independent and every edge `uv` with `u < v` has `t(u) < t(v)`.
#[derive(Debug, Clone)]
pub struct TieredGraph {
    graph: Multigraph,
    tiers: BTreeMap<Vertex, usize>,
    tier_count: usize,
}

impl PartialEq for TieredGraph {
    /// Equal when vertex sets, tier classes and edge sets coincide. Edge ids
    /// are not compared.
    fn eq(&self, other: &Self) -> bool {
        self.tier_count == other.tier_count
            && self.tiers == other.tiers
            && self.edge_pairs() == other.edge_pairs()
    }
}

impl Eq for TieredGraph {}

impl TieredGraph {
    /// Validates the tier axioms. A single vertex with `m = 2` may leave one
    /// tier empty; otherwise the tiering map must be surjective.
    pub fn new(
        graph: Multigraph,
        tiers: BTreeMap<Vertex, usize>,
        tier_count: usize,
    ) -> Result<Self> {
        if tier_count == 0 {
            return Err(invalid("a tiered graph needs at least one tier"));
        }
        if !graph.is_simple() {
            return Err(invalid("a tiered graph must be simple"));
        }
        if tiers.keys().ne(graph.vertices().iter()) {
            return Err(invalid("the tier map must cover exactly the vertex set"));
        }
        if tiers.values().any(|t| *t == 0 || *t > tier_count) {
            return Err(invalid(format!(
                "tier indices must lie in 1..={tier_count}"
            )));
        }
        let used: BTreeSet<usize> = tiers.values().copied().collect();
        let degenerate = graph.vertex_count() == 1 && tier_count == 2;
        if used.len() != tier_count && !degenerate {
            return Err(invalid("the tier map must be surjective"));
        }
        for e in graph.edges() {
            if tiers[&e.u] >= tiers[&e.v] {
                return Err(invalid(format!(
                    "edge {}{} violates the tier order",
                    e.u, e.v
                )));
            }
        }
        Ok(Self {
            graph,
            tiers,
            tier_count,
        })
    }

    /// Builds from tier classes `V_1, ..., V_m` and an edge list.
    pub fn from_classes(
        classes: &[BTreeSet<Vertex>],
        pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut tiers = BTreeMap::new();
        for (i, class) in classes.iter().enumerate() {
            for v in class {
                if tiers.insert(*v, i + 1).is_some() {
                    return Err(invalid(format!("vertex {v} appears in two tiers")));
                }
            }
        }
        let graph = Multigraph::from_edge_list(tiers.keys().copied(), pairs)?;
        Self::new(graph, tiers, classes.len())
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn into_graph(self) -> Multigraph {
        self.graph
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        self.graph.vertices()
    }

    pub fn tier_count(&self) -> usize {
        self.tier_count
    }

    pub fn tier_map(&self) -> &BTreeMap<Vertex, usize> {
        &self.tiers
    }

    pub fn tier(&self, v: Vertex) -> Option<usize> {
        self.tiers.get(&v).copied()
    }

    /// `V_i(G)` for `i` in `1..=m`.
    pub fn tier_class(&self, i: usize) -> BTreeSet<Vertex> {
        self.tiers
            .iter()
            .filter(|(_, t)| **t == i)
            .map(|(v, _)| *v)
            .collect()
    }

    pub fn tier_classes(&self) -> Vec<BTreeSet<Vertex>> {
        (1..=self.tier_count).map(|i| self.tier_class(i)).collect()
    }

    pub fn tier_sizes(&self) -> Vec<usize> {
        (1..=self.tier_count)
            .map(|i| self.tiers.values().filter(|t| **t == i).count())
            .collect()
    }

    pub fn edge_pairs(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.graph.edges().iter().map(Edge::endpoints).collect()
    }

    /// Id of the edge joining `a` and `b`, if present.
    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        let (u, v) = (a.min(b), a.max(b));
        self.graph
            .edges()
            .iter()
            .find(|e| e.u == u && e.v == v)
            .map(|e| e.id)
    }

    /// Same tier classes, only the listed edges.
    pub fn with_edges(&self, ids: &EdgeSet) -> Result<TieredGraph> {
        Ok(TieredGraph {
            graph: self.graph.spanning_subgraph(ids)?,
            tiers: self.tiers.clone(),
            tier_count: self.tier_count,
        })
    }

    /// Restriction to a vertex subset, keeping the tier indices as they are.
    /// The result need not be surjective, so it is returned as raw parts.
    pub fn induced_parts(&self, keep: &BTreeSet<Vertex>) -> (Multigraph, BTreeMap<Vertex, usize>) {
        let drop: BTreeSet<Vertex> = self.vertices().difference(keep).copied().collect();
        let g = self.graph.remove_vertices(&drop);
        let tiers = self
            .tiers
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(v, t)| (*v, *t))
            .collect();
        (g, tiers)
    }
}

/// `CT(U_1, ..., U_k)`: for `i < j`, `u ∈ U_i`, `v ∈ U_j`, `uv` is an edge iff
/// `u < v`. Edge ids follow lexicographic order of the endpoint pairs.
pub fn complete_tiered_graph(classes: &[BTreeSet<Vertex>]) -> Result<TieredGraph> {
    if classes.is_empty() {
        return Err(invalid("at least one tier is required"));
    }
    if classes.iter().any(BTreeSet::is_empty) {
        return Err(invalid("tier sets must be nonempty"));
    }
    let mut tier_of = BTreeMap::new();
    for (i, class) in classes.iter().enumerate() {
        for v in class {
            if tier_of.insert(*v, i).is_some() {
                return Err(invalid(format!("vertex {v} lies in two tier sets")));
            }
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = tier_of
        .keys()
        .tuple_combinations()
        .filter(|(u, v)| tier_of[*u] < tier_of[*v])
        .map(|(u, v)| (*u, *v))
        .collect();
    TieredGraph::from_classes(classes, pairs)
}

/// `CT_{U,p}`: one complete tiered graph per ordered set partition of `U`
/// with block sizes `p`. Lexicographic in the choice of `V_1`, then `V_2`, ...
pub fn enumerate_complete_family(
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<Vec<TieredGraph>> {
    if p.total() != universe.len() {
        return Err(invalid(format!(
            "partition {p} does not sum to |U| = {}",
            universe.len()
        )));
    }
    ordered_set_partitions(universe, p.parts())
        .iter()
        .map(|classes| complete_tiered_graph(classes))
        .collect()
}

/// `CT^c_{U,p}`: the connected members of [`enumerate_complete_family`].
pub fn enumerate_connected_family(
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<Vec<TieredGraph>> {
    Ok(enumerate_complete_family(universe, p)?
        .into_iter()
        .filter(|g| g.graph().is_connected())
        .collect())
}

/// All ordered set partitions of `universe` into blocks of the given sizes.
pub fn ordered_set_partitions(
    universe: &BTreeSet<Vertex>,
    sizes: &[usize],
) -> Vec<Vec<BTreeSet<Vertex>>> {
    fn rec(
        rest: &[Vertex],
        sizes: &[usize],
        cur: &mut Vec<BTreeSet<Vertex>>,
        out: &mut Vec<Vec<BTreeSet<Vertex>>>,
    ) {
        let Some((&first, tail)) = sizes.split_first() else {
            if rest.is_empty() {
                out.push(cur.clone());
            }
            return;
        };
        for block in rest.iter().copied().combinations(first) {
            let block: BTreeSet<Vertex> = block.into_iter().collect();
            let remaining: Vec<Vertex> = rest
                .iter()
                .copied()
                .filter(|v| !block.contains(v))
                .collect();
            cur.push(block);
            rec(&remaining, tail, cur, out);
            cur.pop();
        }
    }
    let items: Vec<Vertex> = universe.iter().copied().collect();
    let mut out = Vec::new();
    rec(&items, sizes, &mut Vec::new(), &mut out);
    out
}

/// `[n] = {1, ..., n}`.
pub fn interval(n: usize) -> BTreeSet<Vertex> {
    (1..=n as Vertex).collect()
}

/// `H ∪ Q`: a host multigraph `H` plus a tiered graph `Q` on `U ⊆ V(H)`.
/// Edges of `Q` get fresh ids above those of `H`, so parallel copies stay
/// distinct.
#[derive(Debug, Clone)]
pub struct QuasiTieredGraph {
    host: Multigraph,
    tiered: TieredGraph,
    combined: Multigraph,
    tiered_ids: BTreeMap<(Vertex, Vertex), EdgeId>,
}

impl PartialEq for QuasiTieredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host && self.tiered == other.tiered
    }
}

impl Eq for QuasiTieredGraph {}

impl QuasiTieredGraph {
    pub fn new(host: Multigraph, tiered: TieredGraph) -> Result<Self> {
        if !tiered.vertices().is_subset(host.vertices()) {
            return Err(invalid("the tiered part must live on a subset of V(H)"));
        }
        let (combined, remap) = host.union_disjoint(tiered.graph());
        let tiered_ids = tiered
            .graph()
            .edges()
            .iter()
            .map(|e| (e.endpoints(), remap[&e.id]))
            .collect();
        Ok(Self {
            host,
            tiered,
            combined,
            tiered_ids,
        })
    }

    pub fn host(&self) -> &Multigraph {
        &self.host
    }

    pub fn tiered(&self) -> &TieredGraph {
        &self.tiered
    }

    pub fn combined(&self) -> &Multigraph {
        &self.combined
    }

    pub fn is_host_edge(&self, id: EdgeId) -> bool {
        self.host.edge(id).is_some()
    }

    /// Id in [`QuasiTieredGraph::combined`] of the tiered edge `ab`.
    pub fn tiered_edge_id(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        self.tiered_ids.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn tiered_edge_ids(&self) -> EdgeSet {
        self.tiered_ids.values().copied().collect()
    }

    /// `U = V_1 ∪ V_2`.
    pub fn universe(&self) -> &BTreeSet<Vertex> {
        self.tiered.vertices()
    }
}

/// `CT_{U,p}(H)` for a two-part `p`, in lexicographic order of `V_1`.
pub fn complete_quasi_family(
    host: &Multigraph,
    universe: &BTreeSet<Vertex>,
    p: &OrderedPartition,
) -> Result<Vec<QuasiTieredGraph>> {
    enumerate_complete_family(universe, p)?
        .into_iter()
        .map(|q| QuasiTieredGraph::new(host.clone(), q))
        .collect()
}
