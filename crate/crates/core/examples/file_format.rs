//! Reading an instance from text and writing the solution back out.

use popmatch::format::{parse_instance, parse_matching, render_instance, render_solution};
use popmatch::oracle::is_popular;
use popmatch::solve;

const INPUT: &str = "popmatch v1
# name weight : groups, best first; parentheses mark a tie
ann 3 : ( A B ) C
bob 3 : A
cat 1 : B C
";

fn main() -> popmatch::Result<()> {
    let instance = parse_instance(INPUT)?;
    print!("{}", render_instance(&instance));

    let solution = solve(&instance)?;
    let text = render_solution(&solution, &instance);
    print!("{text}");

    if solution.is_popular() {
        let m = parse_matching(&text, &instance)?;
        println!(
            "re-read matching popular: {}",
            is_popular(&m, &instance)?.is_popular()
        );
    }

    match parse_instance("popmatch v1\nann x : A\n") {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
