// Drives the command line in-process and shows each output format.

use clap::Parser;
use moessner::cli::{run, Cli};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sessions: &[&[&str]] = &[
        &["eval", "--preset", "moessner", "--params", "x=3,n=3", "--count-adds"],
        &["--format", "json", "eval", "--preset", "catalan", "--params", "n=20", "--memoized"],
        &["--format", "csv", "prefix", "--preset", "fibonacci", "--vary", "n", "--from", "0", "--to", "7"],
        &["compare", "--preset", "moessner", "--params", "x=4,n=4", "--against", "stolid"],
        &["process", "--exponent", "3", "--prefix", "5", "--trace"],
        &["oeis-check", "--preset", "a002449", "--count", "6"],
    ];
    let mut out = std::io::stdout();
    for args in sessions {
        println!("$ moessner {}", args.join(" "));
        let cli = Cli::try_parse_from(std::iter::once("moessner").chain(args.iter().copied()))?;
        run(&cli, &mut out)?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
