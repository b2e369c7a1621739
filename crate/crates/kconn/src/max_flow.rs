//! Unit-capacity max flow (Dinic) over the two-arc model of an undirected
//! graph, with residual reachability queries.
//!
//! Every undirected edge `{u, v}` becomes the arc pair `(u, v)` / `(v, u)`,
//! each of capacity 1. Pushing along `(v, u)` while `(u, v)` carries a unit
//! cancels the flow instead of storing two units; that makes the residual
//! exactly: a flow-free edge offers both arcs with residual 1, a saturated
//! edge `u→v` offers only `(v, u)` with residual 2.

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FlowError {
    #[error("source and sink must differ (both {0})")]
    SourceIsSink(VertexId),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(VertexId, usize),
}

/// Flow state over the arc pairs of one graph snapshot.
///
/// `state[i]` is the net flow of edge pair `i`: 0 idle, +1 along the stored
/// direction, −1 against it. Arc `2i` is the stored direction, `2i + 1` the
/// reverse; `residual(2i) = 1 − state`, `residual(2i + 1) = 1 + state`.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    // arc a: tail implied by adjacency, head[a], pair index a >> 1
    head: Vec<VertexId>,
    adj: Vec<Vec<u32>>,
    state: Vec<i8>,
}

impl FlowNetwork {
    fn build(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut head = Vec::with_capacity(2 * g.edge_count());
        let mut adj = vec![Vec::new(); n];
        for e in g.sorted_edges() {
            let (u, v) = e.endpoints();
            adj[u].push(head.len() as u32);
            head.push(v);
            adj[v].push(head.len() as u32);
            head.push(u);
        }
        FlowNetwork {
            n,
            head,
            adj,
            state: vec![0; g.edge_count()],
        }
    }

    fn residual(&self, arc: u32) -> i8 {
        let s = self.state[(arc >> 1) as usize];
        if arc & 1 == 0 {
            1 - s
        } else {
            1 + s
        }
    }

    fn push_unit(&mut self, arc: u32) {
        debug_assert!(self.residual(arc) > 0);
        self.state[(arc >> 1) as usize] += if arc & 1 == 0 { 1 } else { -1 };
    }

    /// Vertices reachable from `u` along positive-residual arcs.
    pub fn reachable_from(&self, u: VertexId) -> Vec<VertexId> {
        self.traverse(u, |net, arc| net.residual(arc) > 0)
    }

    /// Vertices from which `v` is reachable along positive-residual arcs,
    /// found by walking arcs backwards: `w` precedes `x` when the arc
    /// `(w, x)` has positive residual, so from `x` we follow the reverse of
    /// each outgoing arc.
    pub fn reaching(&self, v: VertexId) -> Vec<VertexId> {
        self.traverse(v, |net, arc| net.residual(arc ^ 1) > 0)
    }

    fn traverse(&self, start: VertexId, passable: impl Fn(&Self, u32) -> bool) -> Vec<VertexId> {
        assert!(start < self.n, "vertex {start} out of range");
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.adj[x] {
                let w = self.head[a as usize];
                if !seen[w] && passable(self, a) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (0..self.n).filter(|&w| seen[w]).collect()
    }

    /// Net flow states per edge pair, in `sorted_edges` order. Test hook for
    /// flow decomposition.
    #[cfg(test)]
    fn states(&self) -> &[i8] {
        &self.state
    }
}

/// Result of a max-flow run: the value and the residual it left behind.
#[derive(Debug, Clone)]
pub struct FlowResult {
    pub value: usize,
    /// Number of level-graph phases run.
    pub phases: usize,
    pub network: FlowNetwork,
}

/// Dinic's algorithm from `s` to `t` on the unit-capacity model of `g`.
///
/// With `cap = Some(limit)` the search stops as soon as `limit` units are
/// placed, so the returned value is `min(max_flow, limit)`; the residual is
/// a genuine max-flow residual whenever `value < limit`.
pub fn dinic_max_flow(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    cap: Option<usize>,
) -> Result<FlowResult, FlowError> {
    let n = g.vertex_count();
    for v in [s, t] {
        if v >= n {
            return Err(FlowError::VertexOutOfRange(v, n));
        }
    }
    if s == t {
        return Err(FlowError::SourceIsSink(s));
    }
    let mut net = FlowNetwork::build(g);
    let cap = cap.unwrap_or(usize::MAX);
    let mut value = 0;
    let mut phases = 0;
    let mut level = vec![u32::MAX; n];

    while value < cap && bfs_levels(&net, s, t, &mut level) {
        phases += 1;
        value += blocking_flow(&mut net, s, t, &level, cap - value);
    }

    Ok(FlowResult {
        value,
        phases,
        network: net,
    })
}

/// Breadth-first level assignment on the residual; true iff `t` is reachable.
fn bfs_levels(net: &FlowNetwork, s: VertexId, t: VertexId, level: &mut [u32]) -> bool {
    level.fill(u32::MAX);
    level[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &a in &net.adj[u] {
            let w = net.head[a as usize];
            if level[w] == u32::MAX && net.residual(a) > 0 {
                level[w] = level[u] + 1;
                queue.push_back(w);
            }
        }
    }
    level[t] != u32::MAX
}

/// Iterative depth-first blocking flow with current-arc pointers. Under unit
/// capacities each found path saturates entirely, so the search restarts
/// from `s` after every augmentation.
fn blocking_flow(
    net: &mut FlowNetwork,
    s: VertexId,
    t: VertexId,
    level: &[u32],
    budget: usize,
) -> usize {
    let mut it: Vec<usize> = vec![0; net.n];
    let mut dead = vec![false; net.n];
    let mut path: Vec<u32> = Vec::new();
    let mut pushed = 0;
    let mut u = s;
    loop {
        if u == t {
            for &a in &path {
                net.push_unit(a);
            }
            pushed += 1;
            if pushed == budget {
                return pushed;
            }
            path.clear();
            u = s;
            continue;
        }
        let mut advanced = false;
        while it[u] < net.adj[u].len() {
            let a = net.adj[u][it[u]];
            let w = net.head[a as usize];
            if !dead[w] && level[w] == level[u] + 1 && net.residual(a) > 0 {
                path.push(a);
                u = w;
                advanced = true;
                break;
            }
            it[u] += 1;
        }
        if advanced {
            continue;
        }
        dead[u] = true;
        match path.pop() {
            None => return pushed,
            Some(_) => {
                u = match path.last() {
                    Some(&a) => net.head[a as usize],
                    None => s,
                };
            }
        }
    }
}
