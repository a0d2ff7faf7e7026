//! Exhaustive popularity check: every matching of a small instance is
//! compared with every other, and beaten ones come with a witness.

use popmatch::oracle::{all_popular, enumerate_matchings, is_popular, Popularity, DEFAULT_LIMIT};
use popmatch::{Instance, Matching};

fn show(instance: &Instance, m: &Matching) -> String {
    (0..instance.num_applicants())
        .map(|x| {
            let job = m.get(x).map_or("-", |q| instance.job(q).name());
            format!("{}:{job}", instance.applicant(x).name())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> popmatch::Result<()> {
    let instance = Instance::builder()
        .strict("x1", 2, &["A", "B"])
        .strict("x2", 1, &["A", "B"])
        .strict("x3", 1, &["A"])
        .build()?;

    for m in enumerate_matchings(&instance, DEFAULT_LIMIT)? {
        match is_popular(&m, &instance)? {
            Popularity::Popular => println!("{}  popular", show(&instance, &m)),
            Popularity::Beaten {
                witness,
                satisfaction,
            } => println!(
                "{}  beaten {satisfaction} by {}",
                show(&instance, &m),
                show(&instance, &witness)
            ),
        }
    }
    println!("{} popular matchings", all_popular(&instance)?.len());
    Ok(())
}
