//! Canonical forms for small multigraphs, used as memo keys.
//!
//! Vertices are colour-refined by (loops, degree) and then by the multiset of
//! neighbour colours with multiplicities. Within each colour cell every
//! ordering is tried and the lexicographically least upper-triangular
//! multiplicity matrix wins. That is exact: two graphs share a `C` key iff
//! they are isomorphic. When the cells admit more than
//! [`PERMUTATION_LIMIT`] orderings the key falls back to the labelled matrix
//! (prefix `L`), which is still exact but not isomorphism-invariant.

use std::collections::HashMap;

use itertools::Itertools;

use crate::graph::Multigraph;

pub const PERMUTATION_LIMIT: u64 = 40_320;

/// Symmetric multiplicity matrix; the diagonal counts loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct AdjacencyMatrix {
    n: usize,
    mult: Vec<u32>,
}

impl AdjacencyMatrix {
    pub(crate) fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut mult = vec![0u32; n * n];
        for (a, b) in edges {
            mult[a * n + b] += 1;
            if a != b {
                mult[b * n + a] += 1;
            }
        }
        Self { n, mult }
    }

    fn at(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.n + b]
    }

    fn refine(&self) -> Vec<usize> {
        let n = self.n;
        let initial: Vec<(u32, u32)> = (0..n)
            .map(|v| {
                let deg: u32 = (0..n).filter(|w| *w != v).map(|w| self.at(v, w)).sum();
                (self.at(v, v), deg)
            })
            .collect();
        let mut colors = rank(&initial);
        let mut classes = colors.iter().max().map_or(0, |m| m + 1);
        loop {
            let sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(usize, u32)> = (0..n)
                        .filter(|w| *w != v && self.at(v, *w) > 0)
                        .map(|w| (colors[w], self.at(v, w)))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let next = rank(&sigs);
            let next_classes = next.iter().max().map_or(0, |m| m + 1);
            colors = next;
            if next_classes == classes {
                return colors;
            }
            classes = next_classes;
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                out.push(self.at(order[i], order[j]));
            }
        }
        out
    }

    pub(crate) fn canonical_key(&self) -> String {
        let colors = self.refine();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let mut by_color: HashMap<usize, Vec<usize>> = HashMap::new();
        for (v, c) in colors.iter().enumerate() {
            by_color.entry(*c).or_default().push(v);
        }
        for c in by_color.keys().copied().sorted() {
            cells.push(by_color[&c].clone());
        }
        let orderings = cells.iter().try_fold(1u64, |acc, cell| {
            (1..=cell.len() as u64).try_fold(acc, |a, k| a.checked_mul(k))
        });
        match orderings {
            Some(count) if count <= PERMUTATION_LIMIT => {
                let mut best: Option<Vec<u32>> = None;
                let mut order = Vec::with_capacity(self.n);
                self.search(&cells, &mut order, &mut best);
                format!("C{}:{}", self.n, best.unwrap_or_default().iter().join(","))
            }
            _ => {
                let identity: Vec<usize> = (0..self.n).collect();
                format!("L{}:{}", self.n, self.encode(&identity).iter().join(","))
            }
        }
    }

    fn search(&self, cells: &[Vec<usize>], order: &mut Vec<usize>, best: &mut Option<Vec<u32>>) {
        let Some((cell, rest)) = cells.split_first() else {
            let code = self.encode(order);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        };
        for perm in cell.iter().copied().permutations(cell.len()) {
            let mark = order.len();
            order.extend(perm);
            self.search(rest, order, best);
            order.truncate(mark);
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let sorted: Vec<T> = sigs.iter().cloned().sorted().dedup().collect();
    sigs.iter()
        .map(|s| sorted.binary_search(s).expect("signature is present"))
        .collect()
}

/// Canonical key of a multigraph (vertex labels and edge ids ignored).
pub fn canonical_key(g: &Multigraph) -> String {
    let index: HashMap<_, _> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    AdjacencyMatrix::from_edges(
        g.vertex_count(),
        g.edges().iter().map(|e| (index[&e.u], index[&e.v])),
    )
    .canonical_key()
}

/// `Some(answer)` when both keys are canonical; `None` if either graph is too
/// symmetric for the brute-force search.
pub fn isomorphic(a: &Multigraph, b: &Multigraph) -> Option<bool> {
    let (ka, kb) = (canonical_key(a), canonical_key(b));
    if ka.starts_with('C') && kb.starts_with('C') {
        Some(ka == kb)
    } else {
        None
    }
}
