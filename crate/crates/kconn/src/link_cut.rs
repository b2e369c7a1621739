//! Splay-based link-cut forests over the represented-tree interface:
//! make_tree / find_root / link / cut / parent / make_root, all amortized
//! O(log n).
//!
//! Each represented tree is decomposed into preferred paths stored as splay
//! trees keyed by depth; a path root carries a path-parent pointer into the
//! next path up. `parent` and `find_root` answer on the represented tree,
//! not the auxiliary structure. Everything here mutates internal state, even
//! the queries, so the forest is strictly single-threaded.

use thiserror::Error;

use crate::graph::VertexId;

const UNSET: usize = usize::MAX;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LctError {
    #[error("vertex {0} not initialized in this forest")]
    Uninitialized(VertexId),
    #[error("vertex {0} already initialized")]
    AlreadyInitialized(VertexId),
    #[error("link requires {0} to be the root of its tree")]
    LinkSourceNotRoot(VertexId),
    #[error("link of {0} and {1} would create a cycle")]
    SameTree(VertexId, VertexId),
    #[error("cut on root {0}")]
    CutOnRoot(VertexId),
}

#[derive(Debug, Clone, Copy)]
struct Node {
    parent: usize,
    children: [usize; 2],
    rev: bool,
    initialized: bool,
}

impl Node {
    fn fresh() -> Self {
        Node {
            parent: UNSET,
            children: [UNSET; 2],
            rev: false,
            initialized: false,
        }
    }
}

/// A dynamic forest of rooted trees over vertices `0..n`.
#[derive(Debug, Clone)]
pub struct LctForest {
    nodes: Vec<Node>,
    rotations: u64,
}

impl LctForest {
    /// Storage for `n` vertices, none of them initialized yet.
    pub fn new(n: usize) -> Self {
        LctForest {
            nodes: vec![Node::fresh(); n],
            rotations: 0,
        }
    }

    /// Storage for `n` vertices, each already a singleton tree.
    pub fn with_singletons(n: usize) -> Self {
        let mut f = Self::new(n);
        for v in 0..n {
            f.nodes[v].initialized = true;
        }
        f
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Total splay rotations performed so far. This is the restructuring
    /// work that the amortized O(log n) bound speaks about; the benchmarks
    /// read it before and after an operation batch.
    pub fn rotation_count(&self) -> u64 {
        self.rotations
    }

    fn check_init(&self, v: VertexId) -> Result<(), LctError> {
        if v >= self.nodes.len() || !self.nodes[v].initialized {
            Err(LctError::Uninitialized(v))
        } else {
            Ok(())
        }
    }

    // -- splay machinery ----------------------------------------------------

    /// Direction of `v` under its splay parent, or None if `v` is a splay
    /// root (its parent pointer, if any, is a path-parent).
    fn splay_dir(&self, v: usize) -> Option<usize> {
        let p = self.nodes[v].parent;
        if p == UNSET {
            return None;
        }
        let ch = self.nodes[p].children;
        if ch[0] == v {
            Some(0)
        } else if ch[1] == v {
            Some(1)
        } else {
            None
        }
    }

    fn apply_rev(&mut self, v: usize) {
        let node = &mut self.nodes[v];
        node.children.swap(0, 1);
        node.rev ^= true;
    }

    fn push_down(&mut self, v: usize) {
        if self.nodes[v].rev {
            for c in self.nodes[v].children {
                if c != UNSET {
                    self.apply_rev(c);
                }
            }
            self.nodes[v].rev = false;
        }
    }

    fn rotate(&mut self, v: usize) {
        self.rotations += 1;
        let dir = self.splay_dir(v).expect("rotate needs a splay parent");
        let p = self.nodes[v].parent;
        let mid = self.nodes[v].children[dir ^ 1];

        self.nodes[p].children[dir] = mid;
        if mid != UNSET {
            self.nodes[mid].parent = p;
        }
        if let Some(pdir) = self.splay_dir(p) {
            let g = self.nodes[p].parent;
            self.nodes[g].children[pdir] = v;
        }
        self.nodes[v].parent = self.nodes[p].parent;
        self.nodes[v].children[dir ^ 1] = p;
        self.nodes[p].parent = v;
    }

    fn splay(&mut self, v: usize) {
        // Clear pending reversals on the splay path top-down first.
        let mut stack = vec![v];
        let mut x = v;
        while self.splay_dir(x).is_some() {
            x = self.nodes[x].parent;
            stack.push(x);
        }
        while let Some(y) = stack.pop() {
            self.push_down(y);
        }

        while let Some(dir) = self.splay_dir(v) {
            let p = self.nodes[v].parent;
            match self.splay_dir(p) {
                None => self.rotate(v),
                Some(pdir) => {
                    if dir == pdir {
                        self.rotate(p);
                        self.rotate(v);
                    } else {
                        self.rotate(v);
                        self.rotate(v);
                    }
                }
            }
        }
    }

    /// Makes the path from the represented root to `v` preferred and splays
    /// `v` to the root of its auxiliary tree.
    fn access(&mut self, v: usize) {
        self.splay(v);
        // Drop the preferred child below v; it keeps v as path-parent.
        self.nodes[v].children[1] = UNSET;
        while self.nodes[v].parent != UNSET {
            let w = self.nodes[v].parent;
            self.splay(w);
            self.nodes[w].children[1] = v;
            self.splay(v);
        }
    }

    // -- represented-tree operations ----------------------------------------

    /// Initializes `v` as an isolated root.
    pub fn make_tree(&mut self, v: VertexId) -> Result<(), LctError> {
        if v >= self.nodes.len() {
            return Err(LctError::Uninitialized(v));
        }
        if self.nodes[v].initialized {
            return Err(LctError::AlreadyInitialized(v));
        }
        self.nodes[v].initialized = true;
        Ok(())
    }

    /// Root of the tree containing `v`.
    pub fn find_root(&mut self, v: VertexId) -> Result<VertexId, LctError> {
        self.check_init(v)?;
        self.access(v);
        let mut x = v;
        self.push_down(x);
        while self.nodes[x].children[0] != UNSET {
            x = self.nodes[x].children[0];
            self.push_down(x);
        }
        self.splay(x);
        Ok(x)
    }

    /// Represented-tree parent of `v`, or None if `v` is a root.
    pub fn parent(&mut self, v: VertexId) -> Result<Option<VertexId>, LctError> {
        self.check_init(v)?;
        self.access(v);
        let mut x = self.nodes[v].children[0];
        if x == UNSET {
            return Ok(None);
        }
        self.push_down(x);
        while self.nodes[x].children[1] != UNSET {
            x = self.nodes[x].children[1];
            self.push_down(x);
        }
        self.splay(x);
        Ok(Some(x))
    }

    /// Hangs the tree rooted at `v` under `w`. `v` must be a root and the
    /// two must lie in different trees.
    pub fn link(&mut self, v: VertexId, w: VertexId) -> Result<(), LctError> {
        self.check_init(v)?;
        self.check_init(w)?;
        self.access(v);
        if self.nodes[v].children[0] != UNSET {
            return Err(LctError::LinkSourceNotRoot(v));
        }
        if self.find_root(w)? == v {
            return Err(LctError::SameTree(v, w));
        }
        // find_root splayed within w's tree only; v is still its own
        // auxiliary root with no left child.
        self.nodes[v].parent = w;
        Ok(())
    }

    /// Detaches `v` from its represented parent; `v` becomes a root.
    pub fn cut(&mut self, v: VertexId) -> Result<(), LctError> {
        self.check_init(v)?;
        self.access(v);
        let l = self.nodes[v].children[0];
        if l == UNSET {
            return Err(LctError::CutOnRoot(v));
        }
        self.nodes[l].parent = UNSET;
        self.nodes[v].children[0] = UNSET;
        Ok(())
    }

    /// Reroots `v`'s tree at `v` without changing its undirected edge set.
    pub fn make_root(&mut self, v: VertexId) -> Result<(), LctError> {
        self.check_init(v)?;
        self.access(v);
        self.apply_rev(v);
        Ok(())
    }

    /// Whether `u` and `v` are in the same tree.
    pub fn connected(&mut self, u: VertexId, v: VertexId) -> Result<bool, LctError> {
        Ok(self.find_root(u)? == self.find_root(v)?)
    }

    /// The undirected edge set `{(v, parent(v))}` of the represented forest.
    /// Linear-time snapshot for invariant checks and certificate export.
    pub fn tree_edges(&mut self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for v in 0..self.nodes.len() {
            if !self.nodes[v].initialized {
                continue;
            }
            if let Some(p) = self.parent(v).expect("initialized") {
                out.push((v, p));
            }
        }
        out
    }
}
