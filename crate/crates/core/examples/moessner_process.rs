// Strike out, sum, repeat: the list-based process for exponents 0 to 4,
// printed one iteration at a time.

use moessner::process::{run_process, InitRule};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 0..=4 {
        let (row, trace) = run_process(n, 8, &InitRule::ones())?;
        println!("exponent {n}");
        for step in &trace.steps {
            let show: Vec<String> = step.summed.values.iter().take(12).map(|v| v.to_string()).collect();
            println!("  period {}: {}", step.period, show.join(" "));
        }
        let last: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
        println!("  result   {}", last.join(" "));
        assert_eq!(row.values[2], moessner::oracles::pow_u64(3, n));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
