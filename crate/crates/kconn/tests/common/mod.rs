//! Shared helpers for the integration suites: a naive explicit-pointer
//! forest that answers the same queries as the link-cut structure, and
//! seeded instance samplers.

// Each integration binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use kconn::graph::Graph;
use rand::prelude::*;

/// Plain parent-pointer forest with the same operation contract as
/// `LctForest`, every operation linear time. Used as the equivalence oracle.
pub struct NaiveForest {
    parent: Vec<Option<usize>>,
    initialized: Vec<bool>,
}

impl NaiveForest {
    pub fn new(n: usize) -> Self {
        NaiveForest {
            parent: vec![None; n],
            initialized: vec![false; n],
        }
    }

    pub fn make_tree(&mut self, v: usize) -> bool {
        if self.initialized[v] {
            return false;
        }
        self.initialized[v] = true;
        true
    }

    pub fn find_root(&self, mut v: usize) -> usize {
        while let Some(p) = self.parent[v] {
            v = p;
        }
        v
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.parent[v].is_none()
    }

    /// Requires v to be a root in a different tree than w.
    pub fn link(&mut self, v: usize, w: usize) {
        assert!(self.parent[v].is_none());
        assert_ne!(self.find_root(w), v);
        self.parent[v] = Some(w);
    }

    pub fn cut(&mut self, v: usize) {
        assert!(self.parent[v].is_some());
        self.parent[v] = None;
    }

    /// Reverses the parent pointers along the v-to-root path.
    pub fn make_root(&mut self, v: usize) {
        let mut path = vec![v];
        let mut x = v;
        while let Some(p) = self.parent[x] {
            path.push(p);
            x = p;
        }
        for pair in path.windows(2) {
            self.parent[pair[1]] = Some(pair[0]);
        }
        self.parent[v] = None;
    }
}

/// G(n, p) with all isolated-vertex graphs allowed.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    kconn::gen::random_graph(n, p, rng)
}

/// A random edge of g, deterministic given the rng state.
pub fn random_edge<R: Rng>(g: &Graph, rng: &mut R) -> kconn::graph::Edge {
    let edges = g.sorted_edges();
    edges[rng.random_range(0..edges.len())]
}

/// A random non-edge pair, None if complete.
pub fn random_non_edge<R: Rng>(g: &Graph, rng: &mut R) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    if g.edge_count() == n * (n - 1) / 2 {
        return None;
    }
    loop {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.has_edge(u, v) {
            return Some((u, v));
        }
    }
}
