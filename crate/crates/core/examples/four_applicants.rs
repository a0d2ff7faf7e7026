//! Four applicants with strict lists and three weights: the solver finds the
//! unique popular matching and the labels explain why `x3` cannot keep `D`.

use popmatch::strict::run_strict;
use popmatch::{Instance, Solution};

fn main() -> popmatch::Result<()> {
    let instance = Instance::builder()
        .strict("x1", 7, &["A", "B", "C"])
        .strict("x2", 4, &["A", "C", "D"])
        .strict("x3", 2, &["C", "A", "D", "E"])
        .strict("x4", 2, &["A", "D", "E"])
        .build()?;

    let run = run_strict(&instance)?;
    let inst = &run.instance;
    for x in 0..inst.num_applicants() {
        let s = run.fs.second(x).map_or("-", |q| inst.job(q).name());
        println!(
            "{}: f = {}, s = {}",
            inst.applicant(x).name(),
            inst.job(run.fs.first(x)).name(),
            s
        );
    }
    if let Some(reduced) = &run.reduced {
        for q in 0..inst.num_real_jobs() {
            if let Some(l) = reduced.lambda(q) {
                println!("lambda({}) = {l}", inst.job(q).name());
            }
        }
        for &(x, q) in reduced.pruned_edges() {
            println!(
                "pruned ({}, {})",
                inst.applicant(x).name(),
                inst.job(q).name()
            );
        }
    }

    match run.solution {
        Solution::Popular(m) => {
            for (x, q) in m.pairs() {
                println!(
                    "{} -> {}",
                    instance.applicant(x).name(),
                    instance.job(q).name()
                );
            }
        }
        Solution::NoPopularMatching => println!("no popular matching"),
    }
    Ok(())
}
