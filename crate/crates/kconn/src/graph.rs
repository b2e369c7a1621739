//! The maintained undirected simple graph.
//!
//! Vertices are dense indices in `[0, n)` fixed at construction; edges are
//! canonically ordered unordered pairs. Mutations validate their
//! preconditions and report typed errors so that callers can rely on exact
//! edge-count accounting.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Dense vertex index in `[0, n)`. Vertices are never deleted.
pub type VertexId = usize;

/// An undirected edge stored as a canonically ordered pair, so `{u, v}` and
/// `{v, u}` compare and hash equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: VertexId,
    b: VertexId,
}

impl Edge {
    /// Canonical constructor. Panics on a self-loop; callers that handle
    /// untrusted input validate endpoints first (see [`Graph::add_edge`]).
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert!(u != v, "self-loop {{{u},{v}}} is not a valid edge");
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    /// Smaller endpoint.
    pub fn a(&self) -> VertexId {
        self.a
    }

    /// Larger endpoint.
    pub fn b(&self) -> VertexId {
        self.b
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(VertexId, usize),
    #[error("self-loop on vertex {0} rejected")]
    SelfLoop(VertexId),
    #[error("edge {{{0},{1}}} already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {{{0},{1}}} not present")]
    MissingEdge(VertexId, VertexId),
}

/// Mutable undirected simple graph with a fixed vertex set.
///
/// Both an edge set and per-vertex sorted neighbor lists are kept; the two
/// representations stay consistent after every mutation. Cloning takes an
/// independent snapshot safe to hand to another thread for read-only checks.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: HashSet<Edge>,
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Empty graph on `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: HashSet::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    /// Inserts `{u, v}`. Rejects out-of-range endpoints, self-loops and
    /// duplicates, each with a distinct error.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = Edge::new(u, v);
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e.a, e.b));
        }
        for (x, y) in [(u, v), (v, u)] {
            let list = &mut self.adj[x];
            let pos = list.partition_point(|&w| w < y);
            list.insert(pos, y);
        }
        Ok(())
    }

    /// Removes `{u, v}` from the edge set and both neighbor lists.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = Edge::new(u, v);
        if !self.edges.remove(&e) {
            return Err(GraphError::MissingEdge(e.a, e.b));
        }
        for (x, y) in [(u, v), (v, u)] {
            let list = &mut self.adj[x];
            let pos = list.partition_point(|&w| w < y);
            debug_assert!(list[pos] == y);
            list.remove(pos);
        }
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && u < self.n && v < self.n && self.edges.contains(&Edge::new(u, v))
    }

    /// Neighbors of `v` in ascending order. Panics on an out-of-range vertex.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        assert!(v < self.n, "vertex {v} out of range (n = {})", self.n);
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    /// Unordered iteration over the edge set.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    /// Edges sorted by `(a, b)`, the canonical order used by text formats.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut es: Vec<Edge> = self.edges.iter().copied().collect();
        es.sort_unstable();
        es
    }

    /// Builds a graph from an edge list, rejecting the first invalid edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Re-derives the edge set from the adjacency lists. Test hook for the
    /// representation-consistency invariant.
    pub fn edges_from_adjacency(&self) -> HashSet<Edge> {
        let mut out = HashSet::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.insert(Edge::new(u, v));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=", self.n, self.edges.len())?;
        f.debug_list().entries(self.sorted_edges()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn add_single_edge() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn duplicate_add_rejected() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(0, 1), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(2, 2), Err(GraphError::SelfLoop(2)));
    }

    #[test]
    fn out_of_range_rejected() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange(3, 3)));
    }

    #[test]
    fn remove_from_triangle_leaves_path() {
        let mut g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        g.remove_edge(0, 1).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 2) && g.has_edge(0, 2));
    }

    #[test]
    fn remove_missing_edge_rejected() {
        let mut g = Graph::new(2);
        assert_eq!(g.remove_edge(0, 1), Err(GraphError::MissingEdge(0, 1)));
    }

    #[test]
    fn remove_then_readd_is_identity() {
        let original = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let mut g = original.clone();
        g.remove_edge(0, 1).unwrap();
        g.add_edge(0, 1).unwrap();
        assert_eq!(g, original);
    }

    #[test]
    fn k4_degrees() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for v in 0..4 {
            assert_eq!(g.degree(v), 3);
        }
    }

    #[test]
    fn c5_neighbors() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 4]);
    }

    #[test]
    fn has_edge_after_removal() {
        let mut g = Graph::from_edges(2, [(0, 1)]).unwrap();
        g.remove_edge(0, 1).unwrap();
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn edge_is_canonical() {
        assert_eq!(Edge::new(3, 1), Edge::new(1, 3));
        assert_eq!(Edge::new(3, 1).endpoints(), (1, 3));
    }

    #[test]
    #[should_panic]
    fn edge_self_loop_panics() {
        let _ = Edge::new(2, 2);
    }

    proptest! {
        /// Random interleavings of valid adds/removes keep the edge set and
        /// adjacency lists in exact agreement, with degree sum = 2m.
        #[test]
        fn adjacency_matches_edge_set(ops in proptest::collection::vec((0usize..8, 0usize..8), 0..120)) {
            let mut g = Graph::new(8);
            for (u, v) in ops {
                if u == v {
                    continue;
                }
                if g.has_edge(u, v) {
                    g.remove_edge(u, v).unwrap();
                } else {
                    g.add_edge(u, v).unwrap();
                }
                prop_assert_eq!(g.edges_from_adjacency(), g.edges.clone());
                let degree_sum: usize = (0..8).map(|v| g.degree(v)).sum();
                prop_assert_eq!(degree_sum, 2 * g.edge_count());
            }
        }
    }
}
