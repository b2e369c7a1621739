//! Slow, independent ground-truth implementations used by tests and the CLI
//! `verify` command.
//!
//! Local connectivity here is a naive breadth-first augmenting-path flow,
//! deliberately sharing no code with [`crate::max_flow`] so the two can
//! cross-validate each other. Performance is irrelevant at the n ≤ 50 scale
//! these run at.

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    #[error("local connectivity of a vertex with itself is undefined")]
    SameVertex,
    #[error("global connectivity needs at least 2 vertices, graph has {0}")]
    TooFewVertices(usize),
    #[error("cut enumeration limited to {limit} vertices, graph has {n}")]
    TooManyVertices { n: usize, limit: usize },
}

/// One side of a vertex bipartition together with its crossing-edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    /// Vertices on vertex 0's side of the cut.
    pub side: Vec<VertexId>,
    pub cardinality: usize,
}

impl CutReport {
    pub fn separates(&self, u: VertexId, v: VertexId) -> bool {
        self.side.contains(&u) != self.side.contains(&v)
    }
}

/// Unit-capacity residual arena for the naive augmenting-path search.
struct Arena {
    adj: Vec<Vec<usize>>,
    head: Vec<VertexId>,
    cap: Vec<u8>,
}

impl Arena {
    fn build(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![Vec::new(); n];
        let mut head = Vec::new();
        let mut cap = Vec::new();
        for e in g.edges() {
            let (u, v) = e.endpoints();
            adj[u].push(head.len());
            head.push(v);
            cap.push(1);
            adj[v].push(head.len());
            head.push(u);
            cap.push(1);
        }
        Arena { adj, head, cap }
    }

    /// Finds one augmenting path by BFS and pushes a unit of flow along it.
    fn augment(&mut self, s: VertexId, t: VertexId) -> bool {
        let n = self.adj.len();
        let mut via = vec![usize::MAX; n];
        via[s] = usize::MAX - 1;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let w = self.head[a];
                if self.cap[a] > 0 && via[w] == usize::MAX {
                    via[w] = a;
                    if w == t {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if via[t] == usize::MAX {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = via[v];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            v = self.head[a ^ 1];
        }
        true
    }
}

/// λ(u, v; g): the number of edge-disjoint u–v paths, by repeated
/// augmentation until none remains.
pub fn local_connectivity(g: &Graph, u: VertexId, v: VertexId) -> Result<usize, OracleError> {
    if u == v {
        return Err(OracleError::SameVertex);
    }
    let mut arena = Arena::build(g);
    let mut value = 0;
    while arena.augment(u, v) {
        value += 1;
    }
    Ok(value)
}

/// Whether λ(u, v; g) ≥ bound, stopping after `bound` augmentations.
pub fn local_connectivity_at_least(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    bound: usize,
) -> Result<bool, OracleError> {
    if u == v {
        return Err(OracleError::SameVertex);
    }
    let mut arena = Arena::build(g);
    for _ in 0..bound {
        if !arena.augment(u, v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// λ(g) = min over all pairs. For undirected graphs the minimum over a fixed
/// source already meets it, so this runs n − 1 local computations.
pub fn global_connectivity(g: &Graph) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(OracleError::TooFewVertices(n));
    }
    let mut lambda = usize::MAX;
    for t in 1..n {
        lambda = lambda.min(local_connectivity(g, 0, t)?);
        if lambda == 0 {
            break;
        }
    }
    Ok(lambda)
}

/// Whether λ(g) ≥ k, with every local run capped at k.
pub fn is_k_edge_connected(g: &Graph, k: usize) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(OracleError::TooFewVertices(n));
    }
    if k == 0 {
        return Ok(true);
    }
    for t in 1..n {
        if !local_connectivity_at_least(g, 0, t, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All nontrivial bipartitions with crossing-edge count below `bound`.
/// Vertex 0 is fixed on one side, halving the 2^n space.
pub fn enumerate_cuts_below(
    g: &Graph,
    bound: usize,
    limit_n: usize,
) -> Result<Vec<CutReport>, OracleError> {
    let n = g.vertex_count();
    if n > limit_n {
        return Err(OracleError::TooManyVertices { n, limit: limit_n });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let edges: Vec<Edge> = g.sorted_edges();
    let mut out = Vec::new();
    // mask bit i-1 puts vertex i on vertex 0's side; all-ones would be trivial
    for mask in 0..(1u64 << (n - 1)) - 1 {
        let in_side = |v: VertexId| v == 0 || mask >> (v - 1) & 1 == 1;
        let cardinality = edges
            .iter()
            .filter(|e| in_side(e.a()) != in_side(e.b()))
            .count();
        if cardinality < bound {
            let side = (0..n).filter(|&v| in_side(v)).collect();
            out.push(CutReport { side, cardinality });
        }
    }
    Ok(out)
}
