//! Times the strict and ties engines on growing random instances.

use popmatch::bench;

fn main() -> popmatch::Result<()> {
    let rows = bench::run(&[500, 1_000, 2_000, 4_000], 7)?;
    print!("{}", bench::to_csv(&rows));
    Ok(())
}
