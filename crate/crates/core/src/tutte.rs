//! Tutte polynomials by deletion and contraction.
//!
//! Each call strips loops (`y` each), splits into components (the product
//! over components), contracts every bridge (`x` each) and only then
//! branches on a pivot edge. The loopless bridgeless cores are memoised
//! under their canonical key.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::{OnceLock, RwLock};

use crate::canon::AdjacencyMatrix;
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::poly::{BiPoly, UniPoly};

/// Which edge the recursion branches on. The result does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    #[default]
    HighestId,
    LowestId,
}

/// Dense working copy: vertices `0..n`, edges carry their original id.
#[derive(Debug, Clone)]
struct Work {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl Work {
    fn from_graph(g: &Multigraph) -> Self {
        let index: HashMap<_, _> = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i))
            .collect();
        Work {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (index[&e.u], index[&e.v], e.id.0))
                .collect(),
        }
    }

    /// Relabels vertices through `dsu` roots, compressing to `0..k`.
    fn quotient(&self, dsu: &mut Dsu, keep: impl Fn(u64) -> bool) -> Work {
        let mut label = vec![usize::MAX; self.n];
        let mut k = 0;
        for v in 0..self.n {
            let r = dsu.find(v);
            if label[r] == usize::MAX {
                label[r] = k;
                k += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(_, _, id)| keep(*id))
            .map(|&(a, b, id)| {
                let (x, y) = (label[dsu.find(a)], label[dsu.find(b)]);
                (x.min(y), x.max(y), id)
            })
            .collect();
        Work { n: k, edges }
    }

    fn components(&self) -> Vec<Work> {
        let mut dsu = Dsu::new(self.n);
        for &(a, b, _) in &self.edges {
            dsu.union(a, b);
        }
        let mut slot = vec![usize::MAX; self.n];
        let mut local = vec![0usize; self.n];
        let mut parts: Vec<Work> = Vec::new();
        for (v, lv) in local.iter_mut().enumerate() {
            let r = dsu.find(v);
            if slot[r] == usize::MAX {
                slot[r] = parts.len();
                parts.push(Work {
                    n: 0,
                    edges: Vec::new(),
                });
            }
            let p = &mut parts[slot[r]];
            *lv = p.n;
            p.n += 1;
        }
        for &(a, b, id) in &self.edges {
            let p = &mut parts[slot[dsu.find(a)]];
            p.edges.push((local[a], local[b], id));
        }
        parts
    }

    /// Bridge flags via low-link numbering; parallel edges are told apart by
    /// their position in `edges`.
    fn bridges(&self) -> Vec<bool> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(a, b, _)) in self.edges.iter().enumerate() {
            if a != b {
                adj[a].push((b, i));
                adj[b].push((a, i));
            }
        }
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut is_bridge = vec![false; self.edges.len()];
        let mut clock = 0;
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // explicit stack: (vertex, parent edge, next neighbour index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            while let Some(&mut (v, pe, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let (w, ei) = adj[v][*next];
                    *next += 1;
                    if ei == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, ei, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            is_bridge[pe] = true;
                        }
                    }
                }
            }
        }
        is_bridge
    }

    fn key(&self) -> String {
        AdjacencyMatrix::from_edges(self.n, self.edges.iter().map(|&(a, b, _)| (a, b)))
            .canonical_key()
    }
}

/// Deletion–contraction evaluator with an optional shared memo table.
#[derive(Debug, Default)]
pub struct TutteEngine {
    memo: Option<RwLock<HashMap<String, BiPoly>>>,
    pivot: PivotRule,
}

impl TutteEngine {
    /// Memoised engine.
    pub fn new() -> Self {
        Self {
            memo: Some(RwLock::new(HashMap::new())),
            pivot: PivotRule::default(),
        }
    }

    /// Plain recursion, no memo table.
    pub fn unmemoized() -> Self {
        Self {
            memo: None,
            pivot: PivotRule::default(),
        }
    }

    pub fn with_pivot(mut self, pivot: PivotRule) -> Self {
        self.pivot = pivot;
        self
    }

    /// Process-wide memoised engine used by [`tutte`] and [`tutte_c`].
    pub fn shared() -> &'static TutteEngine {
        static SHARED: OnceLock<TutteEngine> = OnceLock::new();
        SHARED.get_or_init(TutteEngine::new)
    }

    pub fn is_memoized(&self) -> bool {
        self.memo.is_some()
    }

    pub fn cache_len(&self) -> usize {
        self.memo
            .as_ref()
            .map_or(0, |m| m.read().expect("memo lock poisoned").len())
    }

    pub fn tutte(&self, g: &Multigraph) -> BiPoly {
        self.eval(Work::from_graph(g))
    }

    /// `T_G(1, y)` for connected `G`, zero otherwise.
    pub fn tutte_c(&self, g: &Multigraph) -> UniPoly {
        if g.is_connected() {
            self.tutte(g).specialize_x1()
        } else {
            UniPoly::zero()
        }
    }

    fn eval(&self, w: Work) -> BiPoly {
        let loops = w.edges.iter().filter(|(a, b, _)| a == b).count() as u32;
        let loopless = Work {
            n: w.n,
            edges: w.edges.into_iter().filter(|(a, b, _)| a != b).collect(),
        };
        let mut out = BiPoly::monomial(0, loops, 1);
        for comp in loopless.components() {
            if comp.edges.is_empty() {
                continue;
            }
            out = &out * &self.connected(comp);
        }
        out
    }

    /// `comp` is connected and loopless.
    fn connected(&self, comp: Work) -> BiPoly {
        let flags = comp.bridges();
        let bridge_count = flags.iter().filter(|b| **b).count() as u32;
        let core = if bridge_count == 0 {
            comp
        } else {
            let mut dsu = Dsu::new(comp.n);
            let mut bridge_ids = std::collections::HashSet::new();
            for (i, &(a, b, id)) in comp.edges.iter().enumerate() {
                if flags[i] {
                    dsu.union(a, b);
                    bridge_ids.insert(id);
                }
            }
            comp.quotient(&mut dsu, |id| !bridge_ids.contains(&id))
        };
        if core.edges.is_empty() {
            return BiPoly::monomial(bridge_count, 0, 1);
        }
        self.core(core).shift(bridge_count, 0)
    }

    /// `core` is connected, loopless and bridgeless.
    fn core(&self, core: Work) -> BiPoly {
        let key = self.memo.as_ref().map(|_| core.key());
        if let (Some(memo), Some(k)) = (&self.memo, &key) {
            if let Some(hit) = memo.read().expect("memo lock poisoned").get(k) {
                return hit.clone();
            }
        }
        let pick = match self.pivot {
            PivotRule::HighestId => core.edges.iter().max_by_key(|e| e.2),
            PivotRule::LowestId => core.edges.iter().min_by_key(|e| e.2),
        };
        let &(a, b, pivot) = pick.expect("core has edges");
        let deleted = Work {
            n: core.n,
            edges: core
                .edges
                .iter()
                .copied()
                .filter(|e| e.2 != pivot)
                .collect(),
        };
        let mut dsu = Dsu::new(core.n);
        dsu.union(a, b);
        let contracted = core.quotient(&mut dsu, |id| id != pivot);
        let value = &self.eval(deleted) + &self.eval(contracted);
        if let (Some(memo), Some(k)) = (&self.memo, key) {
            memo.write()
                .expect("memo lock poisoned")
                .insert(k, value.clone());
        }
        value
    }

    /// Loads `{"key": ..., "poly": ...}` records, one per line.
    pub fn load_cache(&self, reader: impl BufRead) -> Result<usize> {
        let Some(memo) = &self.memo else {
            return Ok(0);
        };
        let mut loaded = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record = parse_cache_line(&line)
                .map_err(|e| Error::Parse(format!("cache line {}: {e}", i + 1)))?;
            loaded.push(record);
        }
        let count = loaded.len();
        memo.write().expect("memo lock poisoned").extend(loaded);
        Ok(count)
    }

    /// Writes the memo table sorted by key.
    pub fn save_cache(&self, mut writer: impl Write) -> Result<()> {
        let Some(memo) = &self.memo else {
            return Ok(());
        };
        let memo = memo.read().expect("memo lock poisoned");
        let mut keys: Vec<&String> = memo.keys().collect();
        keys.sort();
        for k in keys {
            let record = CacheRecord {
                key: k.clone(),
                poly: memo[k].clone(),
            };
            writeln!(writer, "{}", serde_json::to_string(&record)?)?;
        }
        Ok(())
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheRecord {
    key: String,
    poly: BiPoly,
}

/// Parses one memo-cache line, checking the key shape against the matrix
/// size it announces.
pub fn parse_cache_line(line: &str) -> Result<(String, BiPoly)> {
    let record: CacheRecord = serde_json::from_str(line)?;
    let bad = || Error::Parse(format!("malformed cache key {:?}", record.key));
    let body = record
        .key
        .strip_prefix('C')
        .or_else(|| record.key.strip_prefix('L'))
        .ok_or_else(bad)?;
    let (n, cells) = body.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let expected = n.checked_mul(n + 1).ok_or_else(bad)? / 2;
    let count = if cells.is_empty() {
        0
    } else {
        let parts: Vec<&str> = cells.split(',').collect();
        if parts.iter().any(|p| p.parse::<u32>().is_err()) {
            return Err(bad());
        }
        parts.len()
    };
    if count != expected {
        return Err(bad());
    }
    Ok((record.key, record.poly))
}

/// Tutte polynomial via the shared memoised engine.
pub fn tutte(g: &Multigraph) -> BiPoly {
    TutteEngine::shared().tutte(g)
}

/// `T_G(1, y)` if `G` is connected, the zero polynomial otherwise.
pub fn tutte_c(g: &Multigraph) -> UniPoly {
    TutteEngine::shared().tutte_c(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn graph(n: u32, pairs: &[(Vertex, Vertex)]) -> Multigraph {
        Multigraph::from_edge_list(1..=n, pairs.iter().copied()).unwrap()
    }

    fn bi(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        let engines = [TutteEngine::new(), TutteEngine::unmemoized()];
        for e in &engines {
            assert_eq!(e.tutte(&graph(2, &[(1, 2)])), bi("x"));
            assert_eq!(e.tutte(&graph(1, &[(1, 1)])), bi("y"));
            assert_eq!(
                e.tutte(&graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)])),
                bi("x^3 + x^2 + x + y")
            );
            assert_eq!(
                e.tutte(&graph(3, &[(1, 2), (2, 3), (1, 3)])),
                bi("x^2 + x + y")
            );
            assert_eq!(e.tutte(&graph(3, &[])), BiPoly::one());
            // a double edge is x + y; disconnected pieces multiply
            assert_eq!(e.tutte(&graph(2, &[(1, 2), (1, 2)])), bi("x + y"));
            assert_eq!(e.tutte(&graph(4, &[(1, 2), (3, 4), (3, 3)])), bi("x^2*y"));
        }
    }

    #[test]
    fn k4_matches_known_value() {
        let k4 = graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let expect = bi("x^3 + 3*x^2 + 2*x + 4*x*y + 2*y + 3*y^2 + y^3");
        assert_eq!(TutteEngine::unmemoized().tutte(&k4), expect);
        assert_eq!(tutte(&k4), expect);
    }

    #[test]
    fn tutte_c_examples() {
        let c4 = graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(tutte_c(&c4), UniPoly::from_coeffs(&[3, 1]));
        assert!(tutte_c(&graph(2, &[])).is_zero());
        let tree = graph(5, &[(1, 2), (2, 3), (2, 4), (4, 5)]);
        assert_eq!(tutte_c(&tree), UniPoly::one());
    }

    #[test]
    fn pivot_rule_does_not_matter() {
        let g = graph(
            5,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 1),
                (1, 3),
                (2, 4),
                (2, 4),
            ],
        );
        let hi = TutteEngine::unmemoized().tutte(&g);
        let lo = TutteEngine::unmemoized()
            .with_pivot(PivotRule::LowestId)
            .tutte(&g);
        assert_eq!(hi, lo);
    }

    #[test]
    fn cache_round_trip() {
        let engine = TutteEngine::new();
        let k4 = graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let value = engine.tutte(&k4);
        let mut buf = Vec::new();
        engine.save_cache(&mut buf).unwrap();
        assert!(engine.cache_len() > 0);
        let fresh = TutteEngine::new();
        let n = fresh.load_cache(buf.as_slice()).unwrap();
        assert_eq!(n, engine.cache_len());
        assert_eq!(fresh.tutte(&k4), value);
    }

    #[test]
    fn cache_line_validation() {
        assert!(parse_cache_line(r#"{"key":"C2:0,2,0","poly":[[1,0,1],[0,1,1]]}"#).is_ok());
        assert!(parse_cache_line(r#"{"key":"C2:0,2","poly":[]}"#).is_err());
        assert!(parse_cache_line(r#"{"key":"X2:0,2,0","poly":[]}"#).is_err());
        assert!(parse_cache_line(r#"{"key":"C2:0,2,0","poly":[],"extra":1}"#).is_err());
        assert!(parse_cache_line("not json").is_err());
    }
}
