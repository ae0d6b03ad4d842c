// Undo the process: start from (x+1)^n, difference and splice monomials
// until only ones are left.

use moessner::inverse::{check_roundtrip, run_inverse};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=4 {
        println!("exponent {n}");
        for (t, row) in run_inverse(n, 8)?.iter().enumerate() {
            let show: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            println!("  after {t}: {}", show.join(" "));
        }
        assert!(check_roundtrip(n, 16));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
