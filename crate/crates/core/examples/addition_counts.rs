// Four ways to compute (x+1)^n and what each one costs in additions.

use moessner::engine::evaluate_counting;
use moessner::presets::{self, PresetParams};
use moessner::process::{dp_power, log_add_power_prefix, naive_power};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>2} {:>2} {:>8} {:>9} {:>9} {:>6} {:>8}", "x", "n", "value", "ethereal", "stolid", "dp", "log-add");
    for (x, n) in [(1, 4), (3, 3), (4, 4), (7, 5), (9, 5)] {
        let p = PresetParams::new().with("x", x).with("n", n);
        let ethereal = evaluate_counting(&presets::build("moessner", &p)?)?;
        let stolid = evaluate_counting(&presets::build("moessner_stolid", &p)?)?;
        let naive = naive_power(x, n);
        let dp = dp_power(x, n);
        let log = log_add_power_prefix(n, x + 1)?;
        let log_cost: u64 = log.additions.iter().map(|round| round[x as usize]).sum();
        assert_eq!(ethereal.additions, naive.additions);
        assert_eq!(dp.value, ethereal.value);
        assert_eq!(log.multiplications, 0);
        println!(
            "{x:>2} {n:>2} {:>8} {:>9} {:>9} {:>6} {:>8}",
            dp.value, ethereal.additions, stolid.additions, dp.additions, log_cost
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
