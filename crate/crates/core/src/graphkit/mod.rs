//! Bipartite matching primitives shared by both solvers.
//!
//! Left vertices are applicants, right vertices are jobs. All routines are
//! deterministic: adjacency lists are scanned in stored order and free
//! vertices in index order.

mod matching;
mod rank_maximal;

pub(crate) use matching::critical_with;
pub use matching::{
    alternating_exchange_path, critical_side, critical_vertices, decompose, max_matching,
    CriticalSets, Decomposition, Side, Vertex, VertexClass,
};
pub use rank_maximal::{rank_maximal, signature, RankedGraph};

/// A bipartite graph stored as left-side adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj: Vec<Vec<usize>>,
    n_right: usize,
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        BipartiteGraph {
            adj: vec![Vec::new(); n_left],
            n_right,
        }
    }

    /// Builds a graph from adjacency lists, dropping parallel edges.
    pub fn from_adjacency(n_right: usize, adj: Vec<Vec<usize>>) -> Self {
        let mut g = BipartiteGraph::new(adj.len(), n_right);
        for (l, list) in adj.into_iter().enumerate() {
            for r in list {
                g.add_edge(l, r);
            }
        }
        g
    }

    pub fn n_left(&self) -> usize {
        self.adj.len()
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    /// Adds edge `(l, r)`; returns false if it was already present.
    pub fn add_edge(&mut self, l: usize, r: usize) -> bool {
        assert!(r < self.n_right, "right vertex {r} out of range");
        if self.adj[l].contains(&r) {
            return false;
        }
        self.adj[l].push(r);
        true
    }

    /// Replaces the neighbourhood of `l`. The caller guarantees no duplicates.
    pub(crate) fn set_neighbors(&mut self, l: usize, neighbors: Vec<usize>) {
        debug_assert!(neighbors.iter().all(|&r| r < self.n_right));
        self.adj[l] = neighbors;
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adj[l].contains(&r)
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Right-side adjacency lists, each in increasing left-index order.
    pub fn right_adjacency(&self) -> Vec<Vec<usize>> {
        let mut radj = vec![Vec::new(); self.n_right];
        for (l, list) in self.adj.iter().enumerate() {
            for &r in list {
                radj[r].push(l);
            }
        }
        radj
    }
}

/// A matching stored from both sides.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl BipartiteMatching {
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        BipartiteMatching {
            left: vec![None; n_left],
            right: vec![None; n_right],
        }
    }

    pub fn from_pairs(n_left: usize, n_right: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = Self::empty(n_left, n_right);
        for &(l, r) in pairs {
            m.insert(l, r);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.left.iter().filter(|x| x.is_some()).count()
    }

    pub fn insert(&mut self, l: usize, r: usize) {
        debug_assert!(self.left[l].is_none() && self.right[r].is_none());
        self.left[l] = Some(r);
        self.right[r] = Some(l);
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }

    /// True iff both sides agree and every pair is an edge of `graph`.
    pub fn is_valid_in(&self, graph: &BipartiteGraph) -> bool {
        self.left.len() == graph.n_left()
            && self.right.len() == graph.n_right()
            && self
                .pairs()
                .all(|(l, r)| graph.has_edge(l, r) && self.right[r] == Some(l))
            && self
                .right
                .iter()
                .enumerate()
                .all(|(r, l)| l.is_none_or(|l| self.left[l] == Some(r)))
    }
}
