use super::matching::{decompose_with, max_matching};
use super::{BipartiteGraph, BipartiteMatching, VertexClass};

/// Bipartite graph whose edges carry a rank in `1..=max_rank`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankedGraph {
    adj: Vec<Vec<(usize, u32)>>,
    n_right: usize,
}

impl RankedGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        RankedGraph {
            adj: vec![Vec::new(); n_left],
            n_right,
        }
    }

    pub fn add_edge(&mut self, l: usize, r: usize, rank: u32) {
        assert!(r < self.n_right, "right vertex {r} out of range");
        assert!(rank >= 1, "ranks start at 1");
        debug_assert!(
            self.adj[l].iter().all(|&(x, _)| x != r),
            "parallel edge ({l}, {r})"
        );
        self.adj[l].push((r, rank));
    }

    pub fn n_left(&self) -> usize {
        self.adj.len()
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn edges(&self, l: usize) -> &[(usize, u32)] {
        &self.adj[l]
    }

    pub fn rank(&self, l: usize, r: usize) -> Option<u32> {
        self.adj[l].iter().find(|&&(x, _)| x == r).map(|&(_, k)| k)
    }

    pub fn max_rank(&self) -> u32 {
        self.adj
            .iter()
            .flatten()
            .map(|&(_, k)| k)
            .max()
            .unwrap_or(0)
    }
}

/// Counts of matched edges by rank: entry `i` holds the number of rank-`i+1` edges.
pub fn signature(graph: &RankedGraph, matching: &BipartiteMatching, max_rank: u32) -> Vec<usize> {
    let mut sig = vec![0; max_rank as usize];
    for (l, r) in matching.pairs() {
        let k = graph.rank(l, r).expect("matched edge is in the graph");
        sig[k as usize - 1] += 1;
    }
    sig
}

/// Rank-maximal matching by the phase algorithm of Irving et al.
///
/// Phase `i` holds a maximum matching of the reduced graph on ranks `<= i`.
/// Between phases the Gallai-Edmonds partition of that matching decides
/// which edges no rank-maximal matching can use: higher-rank edges at odd or
/// unreachable vertices, and odd-odd / odd-unreachable edges. Matched edges
/// always join even-odd or unreachable-unreachable pairs, so they survive.
pub fn rank_maximal(graph: &RankedGraph, max_rank: u32) -> BipartiteMatching {
    let n_left = graph.n_left();
    let n_right = graph.n_right();
    let mut left_closed = vec![false; n_left];
    let mut right_closed = vec![false; n_right];
    let mut current = BipartiteGraph::new(n_left, n_right);
    let mut matching = BipartiteMatching::empty(n_left, n_right);

    for rank in 1..=max_rank {
        for l in 0..n_left {
            if left_closed[l] {
                continue;
            }
            for &(r, k) in &graph.adj[l] {
                if k == rank && !right_closed[r] {
                    current.adj[l].push(r);
                }
            }
        }
        matching = max_matching(&current, Some(&matching));
        if rank == max_rank {
            break;
        }

        let right_adj = current.right_adjacency();
        let classes = decompose_with(&current, &right_adj, &matching);
        for (l, class) in classes.left.iter().enumerate() {
            if *class != VertexClass::Even {
                left_closed[l] = true;
            }
        }
        for (r, class) in classes.right.iter().enumerate() {
            if *class != VertexClass::Even {
                right_closed[r] = true;
            }
        }
        for (l, list) in current.adj.iter_mut().enumerate() {
            let cl = classes.left[l];
            list.retain(|&r| !doomed(cl, classes.right[r]));
        }
    }
    matching
}

fn doomed(a: VertexClass, b: VertexClass) -> bool {
    use VertexClass::*;
    matches!((a, b), (Odd, Odd) | (Odd, Unreachable) | (Unreachable, Odd))
}
