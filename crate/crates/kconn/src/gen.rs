//! Instance generators: Harary graphs as the canonical minimum-edge
//! k-edge-connected starting points, random graphs, and valid random update
//! traces produced against a shadow maintainer.

use rand::Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::maintainer::{Command, Maintainer, UpdateTrace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("Harary graph H_{{{k},{n}}} needs n >= k+1 and k >= 1")]
    InfeasibleHarary { k: usize, n: usize },
    #[error("traces with deletions need n >= k+2 (n = {n}, k = {k}); a complete graph minus an edge cannot be re-augmented")]
    TooSmallForDeletions { k: usize, n: usize },
    #[error("shadow maintainer rejected the start graph: {0}")]
    BadStart(String),
}

/// The Harary graph H_{k,n}: the classical k-edge-connected graph on n
/// vertices with the minimum ⌈kn/2⌉ edges (k ≥ 2).
///
/// Circulant core: each vertex connects to its ⌊k/2⌋ nearest neighbors on
/// each side of a cycle. Odd k adds diameters (n even) or the standard
/// (n+1)/2 near-diameters (n odd). For k = 1 the minimum 1-edge-connected
/// graph is simply a path on n − 1 edges.
pub fn harary(k: usize, n: usize) -> Result<Graph, GenError> {
    if k == 0 || n < k + 1 {
        return Err(GenError::InfeasibleHarary { k, n });
    }
    if k == 1 {
        return Ok(Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges"));
    }
    let mut g = Graph::new(n);
    let r = k / 2;
    for offset in 1..=r {
        for u in 0..n {
            let v = (u + offset) % n;
            if !g.has_edge(u, v) {
                g.add_edge(u, v).expect("circulant edges are valid");
            }
        }
    }
    if k % 2 == 1 {
        if n.is_multiple_of(2) {
            for u in 0..n / 2 {
                g.add_edge(u, u + n / 2).expect("diameters are fresh");
            }
        } else {
            for u in 0..=(n - 1) / 2 {
                let v = u + (n - 1) / 2;
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v).expect("near-diameter in range");
                }
            }
        }
    }
    debug_assert_eq!(g.edge_count(), (k * n).div_ceil(2));
    Ok(g)
}

/// Erdős–Rényi style G(n, p) with a seeded generator.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// A k-edge-connected graph: Harary core plus `extra` random chords.
/// Adding edges never lowers connectivity, so λ ≥ k by construction.
pub fn random_k_connected<R: Rng>(
    n: usize,
    k: usize,
    extra: usize,
    rng: &mut R,
) -> Result<Graph, GenError> {
    let mut g = harary(k, n)?;
    let complete = n * (n - 1) / 2;
    let room = complete.saturating_sub(g.edge_count());
    for _ in 0..extra.min(room) {
        if let Some((u, v)) = sample_non_edge(&g, rng) {
            g.add_edge(u, v).expect("sampled a non-edge");
        }
    }
    Ok(g)
}

/// Uniform-ish non-edge: rejection sampling with an exact enumeration
/// fallback so dense graphs still terminate. None if the graph is complete.
fn sample_non_edge<R: Rng>(g: &Graph, rng: &mut R) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    if n < 2 || g.edge_count() == n * (n - 1) / 2 {
        return None;
    }
    for _ in 0..64 {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.has_edge(u, v) {
            return Some((u.min(v), u.max(v)));
        }
    }
    let mut free = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                free.push((u, v));
            }
        }
    }
    free.get(rng.random_range(0..free.len())).copied()
}

/// Generates a trace of `len` commands valid against `start`, by running a
/// shadow maintainer and only emitting commands its current state accepts.
/// Deletions are drawn from the live edge set (which the maintainer itself
/// reshapes through discards and augmentations), additions from the live
/// non-edges. `p_add` is the probability of attempting an addition.
pub fn random_trace<R: Rng>(
    start: &Graph,
    k: usize,
    len: usize,
    p_add: f64,
    rng: &mut R,
) -> Result<UpdateTrace, GenError> {
    let n = start.vertex_count();
    if len > 0 && p_add < 1.0 && n < k + 2 {
        return Err(GenError::TooSmallForDeletions { k, n });
    }
    let mut shadow =
        Maintainer::new(start.clone(), k).map_err(|e| GenError::BadStart(e.to_string()))?;
    let mut commands = Vec::with_capacity(len);
    while commands.len() < len {
        let add = rng.random_bool(p_add);
        let cmd = if add {
            match sample_non_edge(shadow.graph(), rng) {
                Some((u, v)) => Command::Add(u, v),
                None => sample_delete(shadow.graph(), rng),
            }
        } else {
            sample_delete(shadow.graph(), rng)
        };
        shadow
            .apply(cmd)
            .expect("shadow-validated commands never fail");
        commands.push(cmd);
    }
    Ok(UpdateTrace::new(commands))
}

fn sample_delete<R: Rng>(g: &Graph, rng: &mut R) -> Command {
    let edges = g.sorted_edges();
    let e: Edge = edges[rng.random_range(0..edges.len())];
    Command::Delete(e.a(), e.b())
}
