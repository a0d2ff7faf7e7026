use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use popmatch::format::{
    parse_instance, parse_matching, render_instance, render_matching, render_solution,
};
use popmatch::generate::{generate, GeneratorParams};
use popmatch::oracle::{is_popular, Popularity};
use popmatch::{bench, solve_strict, solve_ties, solve_ties_max_cardinality, Solution};

#[derive(Parser)]
#[command(name = "popmatch", version, about = "Weighted popular matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Strict,
    Ties,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Find a popular matching; exit 2 if none exists.
    Solve {
        file: PathBuf,
        /// Leave as few applicants as possible on their last resort.
        #[arg(long)]
        max_cardinality: bool,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
    },
    /// Check a matching against every other matching; exit 2 if beaten.
    Verify { file: PathBuf, matching: PathBuf },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        applicants: usize,
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        list_len: usize,
        #[arg(long, default_value_t = 0.0)]
        tie_prob: f64,
        #[arg(long, default_value_t = 1)]
        categories: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated, one per category.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
    },
    /// Time both engines on generated instances; prints CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes to stdout; a reader that hung up early is not an error.
fn emit(text: &str) -> anyhow::Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve {
            file,
            max_cardinality,
            engine,
        } => {
            let instance =
                parse_instance(&read(&file)?).with_context(|| file.display().to_string())?;
            let use_strict = match engine {
                EngineArg::Strict => true,
                EngineArg::Ties => false,
                EngineArg::Auto => instance.is_strict() && !max_cardinality,
            };
            let solution = if max_cardinality {
                if engine == EngineArg::Strict {
                    bail!("--max-cardinality requires the ties engine");
                }
                solve_ties_max_cardinality(&instance)?
            } else if use_strict {
                solve_strict(&instance)?
            } else {
                solve_ties(&instance)?
            };
            emit(&render_solution(&solution, &instance))?;
            Ok(match solution {
                Solution::Popular(_) => ExitCode::SUCCESS,
                Solution::NoPopularMatching => ExitCode::from(2),
            })
        }
        Command::Verify { file, matching } => {
            let instance =
                parse_instance(&read(&file)?).with_context(|| file.display().to_string())?;
            let m = parse_matching(&read(&matching)?, &instance)
                .with_context(|| matching.display().to_string())?;
            match is_popular(&m, &instance)? {
                Popularity::Popular => {
                    emit("POPULAR\n")?;
                    Ok(ExitCode::SUCCESS)
                }
                Popularity::Beaten {
                    witness,
                    satisfaction,
                } => {
                    emit(&format!("BEATEN {satisfaction}\n"))?;
                    emit(&render_matching(&witness, &instance))?;
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Gen {
            applicants,
            jobs,
            list_len,
            tie_prob,
            categories,
            seed,
            weights,
        } => {
            let params = GeneratorParams {
                applicants,
                jobs,
                list_len,
                vary_list_len: false,
                tie_prob,
                categories,
                seed,
                weights,
            };
            emit(&render_instance(&generate(&params)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { sizes, seed } => {
            emit(&bench::to_csv(&bench::run(&sizes, seed)?))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
