// The reference implementations: Pascal rows, Catalan numbers, the
// Entringer triangle and tree types, all in exact arithmetic.

use moessner::oracles::{a002449_rec, binomial, catalan, entringer_rows, factorial, fibonacci, pascal_row};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let row: Vec<String> = pascal_row(8).iter().map(|v| v.to_string()).collect();
    println!("pascal 8: {}", row.join(" "));
    println!("C(100, 50) = {}", binomial(100, 50));
    println!("catalan 30 = {}", catalan(30));
    println!("fibonacci 90 = {}", fibonacci(90));
    println!("40! = {}", factorial(40));
    for r in entringer_rows(6) {
        let r: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        println!("  {}", r.join(" "));
    }
    let trees: Vec<String> = (0..9).map(|m| a002449_rec(m).to_string()).collect();
    println!("tree types: {}", trees.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
