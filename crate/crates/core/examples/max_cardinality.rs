//! Among popular matchings, prefer one that places the most applicants.

use popmatch::oracle::all_popular;
use popmatch::{solve_ties, solve_ties_max_cardinality, Instance};

fn main() -> popmatch::Result<()> {
    let instance = Instance::builder()
        .ties("x1", 1, &[&["B"], &["C"]])
        .ties("x2", 2, &[&["B", "A"]])
        .ties("x3", 1, &[&["B"]])
        .build()?;

    let any = solve_ties(&instance)?;
    let best = solve_ties_max_cardinality(&instance)?;
    println!(
        "any popular:     size {:?}",
        any.matching().map(|m| m.size())
    );
    println!(
        "max cardinality: size {:?}",
        best.matching().map(|m| m.size())
    );

    let sizes: Vec<usize> = all_popular(&instance)?.iter().map(|m| m.size()).collect();
    println!("sizes of all popular matchings: {sizes:?}");
    Ok(())
}
