//! Independent brute-force references shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use popmatch::generate::{generate, GeneratorParams};
use popmatch::graphkit::{BipartiteGraph, RankedGraph};
use popmatch::strict::FsAssignment;
use popmatch::{Instance, JobId, Matching, Weight};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` distinct weights: half the time `1, 2, 4, ..`, otherwise drawn from `1..=12`.
pub fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<Weight> {
    if rng.gen_bool(0.5) {
        (0..k).map(|i| 1 << i).collect()
    } else {
        sample(rng, 12, k)
            .into_iter()
            .map(|w| w as Weight + 1)
            .collect()
    }
}

/// Half the instances draw sizes and list lengths freely; the other half
/// crowd at least three applicants onto few jobs with full lists, where
/// popular matchings often fail to exist.
pub fn small_instance(
    seed: u64,
    max_applicants: usize,
    max_jobs: usize,
    tie_prob: f64,
) -> Instance {
    let mut rng = rng(seed);
    let crowded = max_applicants >= 3 && rng.gen_bool(0.5);
    let (applicants, jobs) = if crowded {
        (
            rng.gen_range(3..=max_applicants),
            rng.gen_range(2..=max_jobs.min(4)),
        )
    } else {
        (
            rng.gen_range(1..=max_applicants),
            rng.gen_range(1..=max_jobs),
        )
    };
    let categories = rng.gen_range(1..=3);
    let weights = random_weights(&mut rng, categories);
    generate(&GeneratorParams {
        applicants,
        jobs,
        list_len: jobs,
        vary_list_len: !crowded,
        tie_prob,
        categories,
        seed: rng.gen(),
        weights: Some(weights),
    })
    .unwrap()
}

/// Strict instance with at most 6 applicants and 6 jobs.
pub fn small_strict(seed: u64) -> Instance {
    small_instance(seed, 6, 6, 0.0)
}

/// Instance with ties, at most 5 applicants and 5 jobs.
pub fn small_ties(seed: u64) -> Instance {
    let tie_prob = if seed.is_multiple_of(2) { 0.3 } else { 0.7 };
    small_instance(seed, 5, 5, tie_prob)
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_side: usize) -> BipartiteGraph {
    let n_left = rng.gen_range(0..=max_side);
    let n_right = rng.gen_range(0..=max_side);
    let density: f64 = rng.gen_range(0.1..0.7);
    let adj = (0..n_left)
        .map(|_| (0..n_right).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    BipartiteGraph::from_adjacency(n_right, adj)
}

pub fn random_ranked_graph(rng: &mut ChaCha8Rng, max_side: usize, max_rank: u32) -> RankedGraph {
    let base = random_graph(rng, max_side);
    let mut g = RankedGraph::new(base.n_left(), base.n_right());
    for l in 0..base.n_left() {
        for &r in base.neighbors(l) {
            g.add_edge(l, r, rng.gen_range(1..=max_rank));
        }
    }
    g
}

/// Maximum matching size by exhaustive search over (left vertex, used right set).
pub fn brute_max_matching(graph: &BipartiteGraph) -> usize {
    fn go(
        g: &BipartiteGraph,
        l: usize,
        used: u32,
        memo: &mut HashMap<(usize, u32), usize>,
    ) -> usize {
        if l == g.n_left() {
            return 0;
        }
        if let Some(&v) = memo.get(&(l, used)) {
            return v;
        }
        let mut best = go(g, l + 1, used, memo);
        for &r in g.neighbors(l) {
            if used & (1 << r) == 0 {
                best = best.max(1 + go(g, l + 1, used | (1 << r), memo));
            }
        }
        memo.insert((l, used), best);
        best
    }
    go(graph, 0, 0, &mut HashMap::new())
}

/// Critical vertices by deletion: `v` is critical iff removing it shrinks
/// the maximum matching.
pub fn brute_critical(graph: &BipartiteGraph) -> (Vec<bool>, Vec<bool>) {
    let full = brute_max_matching(graph);
    let n_left = graph.n_left();
    let n_right = graph.n_right();
    let without_left = |v: usize| {
        let adj = (0..n_left)
            .map(|l| {
                if l == v {
                    vec![]
                } else {
                    graph.neighbors(l).to_vec()
                }
            })
            .collect();
        BipartiteGraph::from_adjacency(n_right, adj)
    };
    let without_right = |v: usize| {
        let adj = (0..n_left)
            .map(|l| {
                graph
                    .neighbors(l)
                    .iter()
                    .copied()
                    .filter(|&r| r != v)
                    .collect()
            })
            .collect();
        BipartiteGraph::from_adjacency(n_right, adj)
    };
    let left = (0..n_left)
        .map(|v| brute_max_matching(&without_left(v)) < full)
        .collect();
    let right = (0..n_right)
        .map(|v| brute_max_matching(&without_right(v)) < full)
        .collect();
    (left, right)
}

/// Lexicographically largest rank signature over all matchings.
pub fn brute_rank_signature(graph: &RankedGraph, max_rank: u32) -> Vec<usize> {
    fn go(
        g: &RankedGraph,
        k: usize,
        l: usize,
        used: u32,
        memo: &mut HashMap<(usize, u32), Vec<usize>>,
    ) -> Vec<usize> {
        if l == g.n_left() {
            return vec![0; k];
        }
        if let Some(v) = memo.get(&(l, used)) {
            return v.clone();
        }
        let mut best = go(g, k, l + 1, used, memo);
        for &(r, rank) in g.edges(l) {
            if used & (1 << r) == 0 {
                let mut sig = go(g, k, l + 1, used | (1 << r), memo);
                sig[rank as usize - 1] += 1;
                best = best.max(sig);
            }
        }
        memo.insert((l, used), best.clone());
        best
    }
    go(graph, max_rank as usize, 0, 0, &mut HashMap::new())
}

/// The job `x` holds, last resorts spelled out.
pub fn slot(fs: &FsAssignment, m: &Matching, x: usize) -> JobId {
    m.get(x).unwrap_or(fs.last_resort(x))
}

/// Minimum promotion-path cost out of f-job `p` w.r.t. the well-formed
/// matching `m`, by walking every path. Paths step from `x` to a job `x`
/// prefers over its own, held by the applicant whose f-job it is.
pub fn brute_promotion_cost(
    instance: &Instance,
    fs: &FsAssignment,
    m: &Matching,
    p: JobId,
) -> i128 {
    let n = instance.num_applicants();
    let holder: HashMap<JobId, usize> = (0..n).map(|x| (slot(fs, m, x), x)).collect();
    let start = holder[&p];
    assert_eq!(fs.first(start), p, "f-job held by a non-contender");

    fn walk(
        instance: &Instance,
        fs: &FsAssignment,
        m: &Matching,
        holder: &HashMap<JobId, usize>,
        x: usize,
        promoted: i128,
        depth: usize,
    ) -> i128 {
        assert!(
            depth <= instance.num_applicants(),
            "promotion path is not simple"
        );
        let mut best = i128::from(instance.weight(x)) - promoted;
        let rank = instance.rank_of(x, slot(fs, m, x)).unwrap();
        for &q in instance.groups(x)[..rank].iter().flatten() {
            if let Some(&y) = holder.get(&q) {
                if fs.first(y) == q {
                    let w = i128::from(instance.weight(x));
                    best = best.min(walk(instance, fs, m, holder, y, promoted + w, depth + 1));
                }
            }
        }
        best
    }
    walk(instance, fs, m, &holder, start, 0, 0)
}
