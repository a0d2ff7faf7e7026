//! Maximum matching, critical vertices, the even/odd/unreachable split,
//! exchange paths and rank-maximal matching on plain bipartite graphs.

use popmatch::graphkit::{
    alternating_exchange_path, critical_vertices, decompose, max_matching, rank_maximal, signature,
    BipartiteGraph, RankedGraph,
};

fn main() {
    // Left 0..4, right 0..4: one left vertex and one right vertex stay unmatched.
    let g = BipartiteGraph::from_adjacency(4, vec![vec![0, 1], vec![0], vec![1], vec![2, 3]]);
    let m = max_matching(&g, None);
    println!("maximum matching: {:?}", m.pairs().collect::<Vec<_>>());

    let critical = critical_vertices(&g, &m);
    println!("critical left:  {:?}", critical.applicants);
    println!("critical right: {:?}", critical.jobs);

    let d = decompose(&g, &m);
    println!("left classes:  {:?}", d.left);
    println!("right classes: {:?}", d.right);

    for r in 0..g.n_right() {
        if let Ok(path) = alternating_exchange_path(&g, &m, r) {
            println!("exchange path from right {r}: {path:?}");
        }
    }

    let mut ranked = RankedGraph::new(3, 3);
    ranked.add_edge(0, 0, 1);
    ranked.add_edge(0, 1, 2);
    ranked.add_edge(1, 0, 1);
    ranked.add_edge(1, 2, 3);
    ranked.add_edge(2, 1, 1);
    let rm = rank_maximal(&ranked, 3);
    println!(
        "rank-maximal: {:?}, signature {:?}",
        rm.pairs().collect::<Vec<_>>(),
        signature(&ranked, &rm, 3)
    );
}
