//! Timing harness behind the `bench` command.

use std::fmt;
use std::time::Instant;

use crate::error::Result;
use crate::generate::{generate, GeneratorParams};
use crate::instance::Instance;
use crate::{solve_strict, solve_ties};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Strict,
    Ties,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Strict => "strict",
            Engine::Ties => "ties",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub engine: Engine,
    pub millis: f64,
}

/// Wall-clock milliseconds of one solve.
pub fn time_solve(instance: &Instance, engine: Engine) -> Result<f64> {
    let start = Instant::now();
    match engine {
        Engine::Strict => solve_strict(instance)?,
        Engine::Ties => solve_ties(instance)?,
    };
    Ok(start.elapsed().as_secs_f64() * 1e3)
}

/// The instance benchmarked at size `n`: `n` applicants and jobs, lists of
/// length 5, three categories.
pub fn bench_params(n: usize, tie_prob: f64, seed: u64) -> GeneratorParams {
    GeneratorParams {
        applicants: n,
        jobs: n,
        list_len: 5,
        tie_prob,
        categories: 3,
        seed,
        ..Default::default()
    }
}

/// Runs the strict engine on a strict instance and the ties engine on an
/// instance with ties, for each size in turn.
pub fn run(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        for (engine, tie_prob) in [(Engine::Strict, 0.0), (Engine::Ties, 0.3)] {
            let instance = generate(&bench_params(n, tie_prob, seed))?;
            let millis = time_solve(&instance, engine)?;
            rows.push(BenchRow {
                n,
                m: instance.num_edges(),
                engine,
                millis,
            });
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,m,engine,millis\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{:.3}\n", r.n, r.m, r.engine, r.millis));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape() {
        let rows = run(&[50, 100], 1).unwrap();
        assert_eq!(rows.len(), 4);
        let csv = to_csv(&rows);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "n,m,engine,millis");
        assert!(lines[1].starts_with("50,250,strict,"));
        assert!(lines[2].starts_with("50,250,ties,"));
    }
}
