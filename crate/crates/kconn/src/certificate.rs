//! Sparse connectivity certificates: the forest partition and its dynamic
//! maintenance under insertions.
//!
//! [`build_partition`] decomposes the edge set into ordered edge-disjoint
//! maximal spanning forests in a single scan. [`SparseCertificate`] keeps the
//! first k of those forests live in link-cut trees and cascades new edges
//! through them; an edge falling out of the last forest is redundant for
//! k-edge-connectivity and is removed from the graph.
//!
//! Forest edges are always genuine graph edges: insertions reroot the
//! endpoint first (`make_root` + `link`), so each forest stays a subgraph of
//! G and the union certificate really contains k edge-disjoint paths between
//! the endpoints of anything it discards.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};
use crate::link_cut::{LctError, LctForest};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CertError {
    #[error("certificate requires k >= 1")]
    ZeroK,
    #[error("level {level} out of range 1..={k}")]
    LevelOutOfRange { level: usize, k: usize },
    #[error("edge {edge} already present at level {level}")]
    EdgeAlreadyInLevel { edge: Edge, level: usize },
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),
    #[error("forest error: {0}")]
    Lct(#[from] LctError),
}

/// The ordered edge-disjoint forest decomposition E_1, E_2, … of a graph,
/// trailing empty levels omitted.
#[derive(Debug, Clone)]
pub struct ForestPartition {
    levels: Vec<Vec<Edge>>,
    steps: u64,
}

impl ForestPartition {
    /// Level edge lists, outermost index 0 holding the first forest.
    pub fn levels(&self) -> &[Vec<Edge>] {
        &self.levels
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Work counter for the construction scan (node selections, edge scans,
    /// bucket traffic). Stays linear in m + n; tests pin the constant.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Union of the first `k` levels as a graph on the same vertex set.
    pub fn union_of_first(&self, k: usize, n: usize) -> Graph {
        let mut g = Graph::new(n);
        for level in self.levels.iter().take(k) {
            for e in level {
                g.add_edge(e.a(), e.b()).expect("levels are edge-disjoint");
            }
        }
        g
    }
}

/// Partitions E into maximal spanning forests by scanning vertices in
/// descending rank order, where a vertex's rank counts the forests it has
/// been connected into so far. An edge seen from x to an unscanned y joins
/// forest r(y)+1, where y is still isolated, so no level ever gains a cycle.
///
/// Vertex selection uses rank buckets with lazy stale entries, keeping the
/// whole scan linear in m + n. Ties within a bucket resolve to the most
/// recently pushed vertex (the initial bucket is seeded so that vertex 0
/// comes out first), which makes the output deterministic.
pub fn build_partition(g: &Graph) -> ForestPartition {
    let n = g.vertex_count();
    let mut rank = vec![0usize; n];
    let mut scanned = vec![false; n];
    let mut levels: Vec<Vec<Edge>> = Vec::new();
    let mut buckets: Vec<Vec<VertexId>> = vec![(0..n).rev().collect()];
    let mut cur = 0usize;
    let mut steps = 0u64;
    let mut remaining = n;

    while remaining > 0 {
        let x = loop {
            steps += 1;
            match buckets[cur].pop() {
                Some(cand) if !scanned[cand] && rank[cand] == cur => break cand,
                Some(_) => {} // stale: rank moved on or already scanned
                None => cur -= 1,
            }
        };
        scanned[x] = true;
        remaining -= 1;
        for &y in g.neighbors(x) {
            steps += 1;
            if scanned[y] {
                continue; // edge {x,y} was scanned from y's side
            }
            let level = rank[y];
            if levels.len() <= level {
                levels.push(Vec::new());
            }
            levels[level].push(Edge::new(x, y));
            if rank[x] == rank[y] {
                rank[x] += 1;
            }
            rank[y] += 1;
            if buckets.len() <= rank[y] {
                buckets.push(Vec::new());
            }
            buckets[rank[y]].push(y);
            cur = cur.max(rank[y]);
            steps += 1;
        }
    }

    ForestPartition { levels, steps }
}

/// Result of cascading one new edge through the certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdditionOutcome {
    /// The cascade stopped at this forest (1-based level).
    Absorbed { level: usize },
    /// An edge fell out of the last forest, was proven redundant, and has
    /// been removed from the graph.
    Discarded { edge: Edge },
}

/// k edge-disjoint spanning forests of G, each kept both as a link-cut
/// forest and as an explicit edge set.
#[derive(Debug, Clone)]
pub struct SparseCertificate {
    k: usize,
    n: usize,
    forests: Vec<LctForest>,
    levels: Vec<BTreeSet<Edge>>,
}

impl SparseCertificate {
    /// Builds the certificate from scratch: partitions the edge set and
    /// loads the first k forests into link-cut trees.
    pub fn new(g: &Graph, k: usize) -> Result<Self, CertError> {
        if k == 0 {
            return Err(CertError::ZeroK);
        }
        let n = g.vertex_count();
        let partition = build_partition(g);
        let mut forests = Vec::with_capacity(k);
        let mut levels = Vec::with_capacity(k);
        for i in 0..k {
            let mut forest = LctForest::new(n);
            for v in 0..n {
                forest.make_tree(v)?;
            }
            let mut set = BTreeSet::new();
            for e in partition.levels().get(i).map_or(&[][..], Vec::as_slice) {
                let (u, v) = e.endpoints();
                forest.make_root(u)?;
                forest.link(u, v)?;
                set.insert(*e);
            }
            forests.push(forest);
            levels.push(set);
        }
        Ok(SparseCertificate {
            k,
            n,
            forests,
            levels,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Explicit edge set of the given 1-based level.
    pub fn level_edges(&self, level: usize) -> Result<&BTreeSet<Edge>, CertError> {
        self.levels
            .get(level.wrapping_sub(1))
            .ok_or(CertError::LevelOutOfRange { level, k: self.k })
    }

    pub fn total_edge_count(&self) -> usize {
        self.levels.iter().map(BTreeSet::len).sum()
    }

    /// Σ|F_i| ≤ k(n − 1); the structural size bound of the certificate.
    pub fn size_bound_ok(&self) -> bool {
        self.total_edge_count() <= self.k * self.n.saturating_sub(1)
    }

    /// Union of all forest levels as a plain graph.
    pub fn union_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for level in &self.levels {
            for e in level {
                g.add_edge(e.a(), e.b()).expect("levels are edge-disjoint");
            }
        }
        g
    }

    /// Total splay rotations across all forests; benchmark probe.
    pub fn rotation_count(&self) -> u64 {
        self.forests.iter().map(LctForest::rotation_count).sum()
    }

    /// Attempts to place the edge (u, v) into the 1-based `level`.
    ///
    /// If the endpoints were in different components the edge is inserted
    /// and `None` returned. Otherwise one tree edge on the u–v path — the
    /// one at u after rerooting at v — is swapped out for (u, v) and
    /// returned as `Some((child, former_parent))`; the component partition
    /// of the level is unchanged in that case.
    pub fn try_add(
        &mut self,
        level: usize,
        u: VertexId,
        v: VertexId,
    ) -> Result<Option<(VertexId, VertexId)>, CertError> {
        if level == 0 || level > self.k {
            return Err(CertError::LevelOutOfRange { level, k: self.k });
        }
        let idx = level - 1;
        let e = Edge::new(u, v);
        if self.levels[idx].contains(&e) {
            return Err(CertError::EdgeAlreadyInLevel { edge: e, level });
        }
        let forest = &mut self.forests[idx];
        if forest.find_root(u)? != forest.find_root(v)? {
            forest.make_root(u)?;
            forest.link(u, v)?;
            self.levels[idx].insert(e);
            Ok(None)
        } else {
            forest.make_root(v)?;
            let p = forest
                .parent(u)?
                .expect("u and v are connected and distinct, so u has a parent");
            forest.cut(u)?;
            forest.make_root(u)?;
            forest.link(u, v)?;
            let displaced = Edge::new(u, p);
            let removed = self.levels[idx].remove(&displaced);
            debug_assert!(removed, "displaced edge {displaced} missing from level set");
            self.levels[idx].insert(e);
            Ok(Some((u, p)))
        }
    }

    /// Cascades a freshly inserted graph edge through the forests. A
    /// displaced edge from level i is offered to level i + 1; an edge
    /// displaced from the last level is redundant and is removed from `g`.
    ///
    /// On the displaced pair the first vertex is the one that was the child
    /// in the previous forest, which keeps cascades reproducible.
    pub fn handle_addition(
        &mut self,
        g: &mut Graph,
        e: Edge,
    ) -> Result<AdditionOutcome, CertError> {
        if !g.has_edge(e.a(), e.b()) {
            return Err(CertError::EdgeNotInGraph(e));
        }
        for (idx, level) in self.levels.iter().enumerate() {
            if level.contains(&e) {
                return Err(CertError::EdgeAlreadyInLevel {
                    edge: e,
                    level: idx + 1,
                });
            }
        }
        let (mut x, mut y) = e.endpoints();
        for level in 1..=self.k {
            match self.try_add(level, x, y)? {
                None => return Ok(AdditionOutcome::Absorbed { level }),
                Some((child, parent)) => {
                    x = child;
                    y = parent;
                }
            }
        }
        let redundant = Edge::new(x, y);
        g.remove_edge(x, y)
            .expect("displaced edges always come from forests, which are subgraphs of g");
        Ok(AdditionOutcome::Discarded { edge: redundant })
    }

    /// Rebuilds the certificate from the current graph. Used after an edge
    /// deletion, where incremental forest repair is not available.
    pub fn rebuild(&mut self, g: &Graph) -> Result<(), CertError> {
        *self = SparseCertificate::new(g, self.k)?;
        Ok(())
    }

    /// Connected-component labels of one 1-based level, from the explicit
    /// edge set. Used by invariant checks.
    pub fn level_components(&self, level: usize) -> Result<Vec<usize>, CertError> {
        let edges = self.level_edges(level)?;
        let mut dsu = Dsu::new(self.n);
        for e in edges {
            dsu.union(e.a(), e.b());
        }
        Ok((0..self.n).map(|v| dsu.find(v)).collect())
    }

    /// Structural self-check: levels pairwise disjoint and subsets of g,
    /// explicit sets in exact agreement with the forest edges, every level
    /// acyclic, size bound respected. Returns the first violation found.
    pub fn check_invariants(&mut self, g: &Graph) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for (i, level) in self.levels.iter().enumerate() {
            for e in level {
                if !g.has_edge(e.a(), e.b()) {
                    return Err(format!("level {} edge {} not in graph", i + 1, e));
                }
                if !seen.insert(*e) {
                    return Err(format!("edge {} present in two levels", e));
                }
            }
        }
        for i in 0..self.k {
            let mut dsu = Dsu::new(self.n);
            for e in &self.levels[i] {
                if !dsu.union(e.a(), e.b()) {
                    return Err(format!("level {} contains a cycle at {}", i + 1, e));
                }
            }
            let from_forest: BTreeSet<Edge> = self.forests[i]
                .tree_edges()
                .into_iter()
                .map(|(u, v)| Edge::new(u, v))
                .collect();
            if from_forest != self.levels[i] {
                return Err(format!(
                    "level {} forest/edge-set mismatch: forest has {} edges, set has {}",
                    i + 1,
                    from_forest.len(),
                    self.levels[i].len()
                ));
            }
        }
        if !self.size_bound_ok() {
            return Err(format!(
                "certificate size {} exceeds k(n-1) = {}",
                self.total_edge_count(),
                self.k * self.n.saturating_sub(1)
            ));
        }
        Ok(())
    }
}

/// Minimal union-find for the invariant checks.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra] = rb;
            true
        }
    }
}
