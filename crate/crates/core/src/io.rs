//! JSON forms of graphs and trees.
//!
//! A graph is `{"vertices": [...], "edges": [[id, u, v], ...], "tiers": {...}}`
//! with `tiers` optional and keyed by vertex label in numeric order. A
//! `"tier_count"` field appears only when it exceeds the largest tier used,
//! which happens for the one-vertex graph with an empty tier.

use std::collections::{BTreeMap, HashSet};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, EdgeId, EdgeSet, Multigraph, TieredGraph, Vertex};
use crate::trees::{weight_recursive, TieredTree};

struct NumericKeys<'a>(&'a BTreeMap<Vertex, usize>);

impl Serialize for NumericKeys<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (v, t) in self.0 {
            map.serialize_entry(&v.to_string(), t)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct GraphOut<'a> {
    vertices: Vec<Vertex>,
    edges: Vec<(u64, Vertex, Vertex)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tiers: Option<NumericKeys<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tier_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphIn {
    vertices: Vec<Vertex>,
    edges: Vec<(u64, Vertex, Vertex)>,
    #[serde(default)]
    tiers: Option<BTreeMap<String, usize>>,
    #[serde(default)]
    tier_count: Option<usize>,
    #[serde(default)]
    #[allow(dead_code)]
    weight: Option<usize>,
}

/// A decoded graph document: the multigraph plus an optional tier map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDoc {
    pub graph: Multigraph,
    pub tiers: Option<BTreeMap<Vertex, usize>>,
    pub tier_count: Option<usize>,
}

impl GraphDoc {
    /// Interprets the document as a tiered graph.
    pub fn into_tiered(self) -> Result<TieredGraph> {
        let tiers = self
            .tiers
            .ok_or_else(|| invalid("the graph has no \"tiers\" map"))?;
        let m = self
            .tier_count
            .or_else(|| tiers.values().copied().max())
            .unwrap_or(0);
        TieredGraph::new(self.graph, tiers, m)
    }
}

fn render(g: &Multigraph, tiers: Option<&TieredGraph>, weight: Option<usize>) -> String {
    let used = tiers.map(|t| t.tier_map().values().copied().max().unwrap_or(0));
    let out = GraphOut {
        vertices: g.vertices().iter().copied().collect(),
        edges: g
            .sorted_edges()
            .iter()
            .map(|e| (e.id.0, e.u, e.v))
            .collect(),
        tiers: tiers.map(|t| NumericKeys(t.tier_map())),
        tier_count: tiers
            .filter(|t| Some(t.tier_count()) != used)
            .map(TieredGraph::tier_count),
        weight,
    };
    serde_json::to_string(&out).expect("graph JSON is always serializable")
}

pub fn graph_to_json(g: &Multigraph) -> String {
    render(g, None, None)
}

pub fn tiered_to_json(g: &TieredGraph) -> String {
    render(g.graph(), Some(g), None)
}

/// Tiered graph JSON plus a `"weight"` field.
pub fn tree_to_json(t: &TieredTree) -> String {
    render(t.graph(), Some(t.as_tiered()), Some(weight_recursive(t)))
}

/// Decodes graph JSON. Structural problems (duplicate ids, stray endpoints,
/// bad tier keys) are reported as errors, never panics.
pub fn parse_graph(s: &str) -> Result<GraphDoc> {
    let raw: GraphIn = serde_json::from_str(s)?;
    let edges = raw
        .edges
        .iter()
        .map(|&(id, u, v)| Edge::new(EdgeId(id), u, v));
    let graph = Multigraph::from_parts(raw.vertices.iter().copied(), edges)?;
    let tiers = match raw.tiers {
        None => None,
        Some(map) => {
            let mut out = BTreeMap::new();
            for (k, t) in map {
                let v: Vertex = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("tier key {k:?} is not a vertex label")))?;
                if out.insert(v, t).is_some() {
                    return Err(Error::Parse(format!("vertex {v} has two tier entries")));
                }
            }
            Some(out)
        }
    };
    if raw.vertices.len() != graph.vertex_count() {
        return Err(Error::Parse("repeated vertex label".into()));
    }
    Ok(GraphDoc {
        graph,
        tiers,
        tier_count: raw.tier_count,
    })
}

pub fn parse_tiered(s: &str) -> Result<TieredGraph> {
    parse_graph(s)?.into_tiered()
}

/// Splits a graph with a partial tier map into host edges and tiered edges.
/// An edge is tiered when both ends carry tiers, the lower end has the
/// smaller tier, and its endpoint pair has not been seen yet. Returns
/// `(host ids in id order, tiered (id, u, v) in id order)`.
pub fn split_quasi(doc: &GraphDoc) -> (Vec<EdgeId>, Vec<(EdgeId, Vertex, Vertex)>) {
    let empty = BTreeMap::new();
    let tiers = doc.tiers.as_ref().unwrap_or(&empty);
    let mut seen = HashSet::new();
    let mut host = Vec::new();
    let mut tiered = Vec::new();
    for e in doc.graph.sorted_edges() {
        let ok = matches!((tiers.get(&e.u), tiers.get(&e.v)), (Some(a), Some(b)) if a < b);
        if ok && seen.insert(e.endpoints()) {
            tiered.push((e.id, e.u, e.v));
        } else {
            host.push(e.id);
        }
    }
    (host, tiered)
}

/// Parses `"3,5,8"` (or an empty string) into edge ids.
pub fn parse_edge_ids(s: &str) -> Result<EdgeSet> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(EdgeSet::new());
    }
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.strip_prefix('e')
                .unwrap_or(part)
                .parse::<u64>()
                .map(EdgeId)
                .map_err(|_| Error::Parse(format!("bad edge id {part:?}")))
        })
        .collect()
}
