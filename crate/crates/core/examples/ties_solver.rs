//! Preference lists with ties go through the layered engine.

use popmatch::ties::{run_ties, Objective};
use popmatch::{solve, Instance};

fn main() -> popmatch::Result<()> {
    let instance = Instance::builder()
        .ties("ann", 5, &[&["A", "B"], &["C"]])
        .ties("bob", 5, &[&["A"], &["B", "C"]])
        .ties("cat", 2, &[&["A", "B", "C"]])
        .ties("dan", 1, &[&["C"], &["A"]])
        .build()?;

    let run = run_ties(&instance, Objective::AnyPopular)?;
    let inst = &run.instance;
    let names = |jobs: &[usize]| {
        jobs.iter()
            .map(|&q| inst.job(q).name())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for (i, layer) in run.layers.layers().iter().enumerate() {
        println!("layer {}: |M| = {}", i + 1, layer.size());
    }
    for x in 0..inst.num_applicants() {
        println!(
            "{}: f = {{{}}}, s = {{{}}}",
            inst.applicant(x).name(),
            names(run.layers.first(x)),
            names(run.layers.second(x))
        );
    }

    match solve(&instance)?.matching() {
        Some(m) => {
            for x in 0..instance.num_applicants() {
                let job = m.get(x).map_or("-", |q| instance.job(q).name());
                println!("{} -> {job}", instance.applicant(x).name());
            }
        }
        None => println!("no popular matching"),
    }
    Ok(())
}
