//! Perfect Code: shop `s_i` sells the closed neighbourhood of `u_i` at unit
//! price and pays 1 once all of it is bought there.
//!
//! A perfect code of size `k` gives cost exactly `n − k`. The converse is
//! weaker: cost `n − k` only needs `k` vertices with pairwise disjoint
//! closed neighbourhoods, since uncovered books may be bought anywhere.

use super::{GeneratedInstance, ReductionError};
use crate::model::{DiscountRule, Money, RawInstance};

/// Largest graph for which the source answer is computed.
const MAX_CERTIFIED_VERTICES: usize = 24;

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Duplicate edges are merged; self-loops are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, ReductionError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(ReductionError::Malformed(format!(
                    "edge ({u}, {v}) leaves the vertex range"
                )));
            }
            if u == v {
                return Err(ReductionError::Malformed(format!(
                    "self-loop at vertex {u}"
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { n, adj })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// `N[u]`, ascending.
    pub fn closed_neighbourhood(&self, u: usize) -> Vec<usize> {
        let mut list = self.adj[u].clone();
        list.push(u);
        list.sort_unstable();
        list
    }

    fn closed_mask(&self, u: usize) -> u64 {
        self.closed_neighbourhood(u)
            .iter()
            .fold(0, |m, &v| m | 1 << v)
    }
}

/// The five-vertex example graph with perfect code `{u1, u5}`.
pub fn code_graph_example() -> SimpleGraph {
    SimpleGraph::new(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]).expect("valid")
}

pub fn from_perfect_code(
    graph: &SimpleGraph,
    k: usize,
) -> Result<GeneratedInstance, ReductionError> {
    let n = graph.num_vertices();
    if n == 0 {
        return Err(ReductionError::EmptyInput);
    }
    let rules = (0..n)
        .map(|u| DiscountRule::new(1, graph.degree(u) as Money + 1))
        .collect();
    let mut raw = RawInstance::new(n, rules);
    for s in 0..n {
        for b in graph.closed_neighbourhood(s) {
            raw.offer(b, s, 1);
        }
    }
    let instance = raw.validate().expect("every vertex covers itself");
    let mut g = GeneratedInstance::new(instance, n as Money - k as Money);
    g.witness_map = (0..n)
        .map(|i| (format!("u{}", i + 1), format!("b{0} s{0}", i + 1)))
        .collect();
    if n <= MAX_CERTIFIED_VERTICES {
        let has_code = has_perfect_code(graph, k);
        g.expected_answer = Some(has_code);
        if !has_code && max_closed_packing(graph) >= k {
            g.notes.push(format!(
                "budget {} is reachable although no perfect code of size {k} exists",
                g.target_budget
            ));
        }
    }
    Ok(g)
}

/// Is there a `k`-set whose closed neighbourhoods partition the vertices?
pub fn has_perfect_code(graph: &SimpleGraph, k: usize) -> bool {
    let n = graph.num_vertices();
    let all: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let masks: Vec<u64> = (0..n).map(|u| graph.closed_mask(u)).collect();
    subsets_of_size(n, k).any(|set| {
        let mut covered = 0u64;
        for &u in &set {
            if covered & masks[u] != 0 {
                return false;
            }
            covered |= masks[u];
        }
        covered == all
    })
}

/// Largest set of vertices with pairwise disjoint closed neighbourhoods.
pub fn max_closed_packing(graph: &SimpleGraph) -> usize {
    let n = graph.num_vertices();
    let masks: Vec<u64> = (0..n).map(|u| graph.closed_mask(u)).collect();
    fn go(i: usize, used: u64, size: usize, masks: &[u64], best: &mut usize) {
        if size + (masks.len() - i) <= *best {
            return;
        }
        if i == masks.len() {
            *best = size;
            return;
        }
        if used & masks[i] == 0 {
            go(i + 1, used | masks[i], size + 1, masks, best);
        }
        go(i + 1, used, size, masks, best);
    }
    let mut best = 0;
    go(0, 0, 0, &masks, &mut best);
    best
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        // advance to the next combination in lexicographic order
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}
