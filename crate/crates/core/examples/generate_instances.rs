//! Seeded instance generation and how often popular matchings exist.

use popmatch::generate::{generate, GeneratorParams};
use popmatch::solve;

fn main() -> popmatch::Result<()> {
    for tie_prob in [0.0, 0.3, 0.7] {
        let mut popular = 0;
        for seed in 0..200 {
            let params = GeneratorParams {
                applicants: 12,
                jobs: 10,
                list_len: 3,
                tie_prob,
                categories: 2,
                seed,
                ..GeneratorParams::default()
            };
            if solve(&generate(&params)?)?.is_popular() {
                popular += 1;
            }
        }
        println!("tie_prob {tie_prob}: {popular}/200 instances have a popular matching");
    }
    Ok(())
}
