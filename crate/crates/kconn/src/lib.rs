//! Maintenance of the edge-connectivity invariant λ(G) ≥ k on an undirected
//! simple graph under single edge additions and removals.
//!
//! The engine keeps the graph sparse after insertions by maintaining k
//! edge-disjoint spanning forests (a sparse connectivity certificate) on top
//! of link-cut trees, and repairs connectivity after deletions by locating
//! the deficient cut in a unit-capacity max-flow residual and bridging it
//! with a minimal set of fresh edges.
//!
//! Modules:
//! - [`graph`]: the maintained undirected simple graph.
//! - [`link_cut`]: splay-based dynamic rooted forests.
//! - [`certificate`]: forest partition construction and the insertion cascade.
//! - [`max_flow`]: unit-capacity Dinic with residual reachability queries.
//! - [`restoration`]: post-deletion cut bridging.
//! - [`oracle`]: slow brute-force ground truth used by tests and `verify`.
//! - [`maintainer`]: the facade tying graph, certificate and restoration
//!   together, plus trace replay.
//! - [`gen`]: Harary graphs and seeded random instance/trace generators.
//! - [`io`]: text formats for graphs, traces, certificates.

pub mod certificate;
pub mod gen;
pub mod graph;
pub mod io;
pub mod link_cut;
pub mod maintainer;
pub mod max_flow;
pub mod oracle;
pub mod restoration;

pub use graph::{Edge, Graph, GraphError, VertexId};
pub use maintainer::{Command, Maintainer, UpdateOutcome, UpdateTrace};
