use std::collections::VecDeque;

use super::{BipartiteGraph, BipartiteMatching};
use crate::error::{Error, Result};

const UNSEEN: usize = usize::MAX;

/// Maximum cardinality matching by Hopcroft-Karp, grown from `seed`.
///
/// The seed must be a valid matching in `graph` (it may be sized for a
/// smaller graph; missing slots are treated as free). Each phase costs
/// `O(n + m)` and the number of phases is bounded by both `O(sqrt(n))` and
/// one more than the number of augmentations needed beyond the seed.
pub fn max_matching(graph: &BipartiteGraph, seed: Option<&BipartiteMatching>) -> BipartiteMatching {
    let n_left = graph.n_left();
    let n_right = graph.n_right();
    let mut m = BipartiteMatching::empty(n_left, n_right);
    if let Some(seed) = seed {
        for (l, r) in seed.pairs() {
            debug_assert!(graph.has_edge(l, r), "seed edge ({l}, {r}) not in graph");
            m.insert(l, r);
        }
    }

    // Greedy pass over free left vertices.
    for l in 0..n_left {
        if m.left[l].is_some() {
            continue;
        }
        if let Some(&r) = graph.neighbors(l).iter().find(|&&r| m.right[r].is_none()) {
            m.insert(l, r);
        }
    }

    let mut dist = vec![UNSEEN; n_left];
    let mut next_edge = vec![0usize; n_left];
    let mut queue = VecDeque::new();
    let mut stack = Vec::new();
    loop {
        // Layer the left vertices by alternating distance from free ones.
        queue.clear();
        for l in 0..n_left {
            if m.left[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = UNSEEN;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &r in graph.neighbors(u) {
                match m.right[r] {
                    None => found = true,
                    Some(w) if dist[w] == UNSEEN => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }

        next_edge.iter_mut().for_each(|e| *e = 0);
        for root in 0..n_left {
            if m.left[root].is_some() {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                let adj = graph.neighbors(u);
                if next_edge[u] == adj.len() {
                    dist[u] = UNSEEN;
                    stack.pop();
                    continue;
                }
                let r = adj[next_edge[u]];
                next_edge[u] += 1;
                match m.right[r] {
                    None => {
                        // Flip the path recorded on the stack.
                        for &l in stack.iter().rev() {
                            let r = graph.neighbors(l)[next_edge[l] - 1];
                            m.left[l] = Some(r);
                            m.right[r] = Some(l);
                        }
                        break;
                    }
                    Some(w) if dist[w] != UNSEEN && dist[w] == dist[u] + 1 => stack.push(w),
                    Some(_) => {}
                }
            }
        }
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    /// Reachable from a free vertex by an even-length alternating path.
    Even,
    /// Reachable from a free vertex by an odd-length alternating path.
    Odd,
    Unreachable,
}

/// Gallai-Edmonds classes of every vertex with respect to a maximum matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub left: Vec<VertexClass>,
    pub right: Vec<VertexClass>,
}

/// Critical vertices: those matched in every maximum matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSets {
    pub applicants: Vec<bool>,
    pub jobs: Vec<bool>,
}

/// Alternating BFS from every free vertex of one side. Returns the "even"
/// marks for that side and the "odd" marks for the other side.
fn sweep_from_free(
    adj: &[Vec<usize>],
    own_mate: &[Option<usize>],
    other_mate: &[Option<usize>],
) -> (Vec<bool>, Vec<bool>) {
    let mut even = vec![false; own_mate.len()];
    let mut odd = vec![false; other_mate.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for (v, mate) in own_mate.iter().enumerate() {
        if mate.is_none() {
            even[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if own_mate[v] == Some(u) || odd[u] {
                continue;
            }
            odd[u] = true;
            if let Some(w) = other_mate[u] {
                if !even[w] {
                    even[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (even, odd)
}

pub(crate) fn decompose_with(
    graph: &BipartiteGraph,
    right_adj: &[Vec<usize>],
    matching: &BipartiteMatching,
) -> Decomposition {
    let (left_even, right_odd) = sweep_from_free(&graph.adj, &matching.left, &matching.right);
    let (right_even, left_odd) = sweep_from_free(right_adj, &matching.right, &matching.left);
    let classify = |even: &[bool], odd: &[bool]| {
        even.iter()
            .zip(odd)
            .map(|(&e, &o)| match (e, o) {
                (true, _) => VertexClass::Even,
                (false, true) => VertexClass::Odd,
                (false, false) => VertexClass::Unreachable,
            })
            .collect()
    };
    Decomposition {
        left: classify(&left_even, &left_odd),
        right: classify(&right_even, &right_odd),
    }
}

/// Even/odd/unreachable partition of both sides. `matching` must be maximum.
pub fn decompose(graph: &BipartiteGraph, matching: &BipartiteMatching) -> Decomposition {
    decompose_with(graph, &graph.right_adjacency(), matching)
}

/// Critical vertices on one side: a vertex is non-critical iff some free
/// vertex of the same side reaches it by an even alternating path.
/// `matching` must be maximum; the result is unspecified otherwise.
pub fn critical_side(
    graph: &BipartiteGraph,
    matching: &BipartiteMatching,
    side: Side,
) -> Vec<bool> {
    debug_assert!(matching.is_valid_in(graph));
    let even = match side {
        Side::Left => sweep_from_free(&graph.adj, &matching.left, &matching.right).0,
        Side::Right => sweep_from_free(&graph.right_adjacency(), &matching.right, &matching.left).0,
    };
    even.into_iter().map(|e| !e).collect()
}

pub(crate) fn critical_with(
    graph: &BipartiteGraph,
    right_adj: &[Vec<usize>],
    matching: &BipartiteMatching,
) -> CriticalSets {
    let left_even = sweep_from_free(&graph.adj, &matching.left, &matching.right).0;
    let right_even = sweep_from_free(right_adj, &matching.right, &matching.left).0;
    CriticalSets {
        applicants: left_even.into_iter().map(|e| !e).collect(),
        jobs: right_even.into_iter().map(|e| !e).collect(),
    }
}

pub fn critical_vertices(graph: &BipartiteGraph, matching: &BipartiteMatching) -> CriticalSets {
    debug_assert!(matching.is_valid_in(graph));
    critical_with(graph, &graph.right_adjacency(), matching)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    Left(usize),
    Right(usize),
}

/// Shortest exchange path out of the matched right vertex `start_job`: it
/// begins with the matched edge at `start_job` and ends at a free right
/// vertex. Returns `Ok(None)` when no such path exists.
pub fn alternating_exchange_path(
    graph: &BipartiteGraph,
    matching: &BipartiteMatching,
    start_job: usize,
) -> Result<Option<Vec<Vertex>>> {
    let first = matching
        .right
        .get(start_job)
        .copied()
        .flatten()
        .ok_or(Error::Unmatched(start_job))?;
    let mut reached_from = vec![UNSEEN; graph.n_right()];
    let mut seen = vec![false; graph.n_right()];
    seen[start_job] = true;
    let mut queue = VecDeque::from([first]);
    while let Some(x) = queue.pop_front() {
        for &q in graph.neighbors(x) {
            if seen[q] || matching.left[x] == Some(q) {
                continue;
            }
            seen[q] = true;
            reached_from[q] = x;
            match matching.right[q] {
                Some(y) => queue.push_back(y),
                None => {
                    let mut path = vec![Vertex::Right(q)];
                    let mut x = x;
                    loop {
                        path.push(Vertex::Left(x));
                        let job = matching.left[x].expect("path applicants are matched");
                        path.push(Vertex::Right(job));
                        if job == start_job {
                            break;
                        }
                        x = reached_from[job];
                    }
                    path.reverse();
                    return Ok(Some(path));
                }
            }
        }
    }
    Ok(None)
}
