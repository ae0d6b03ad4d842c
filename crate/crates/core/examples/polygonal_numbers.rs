// Polygonal numbers as sums of growing integer quotients.

use moessner::polygonal::{polygonal_closed, quotient_sum, quotient_sum_shifted, verify_block_split};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (k, name) in [(1, "triangular"), (2, "square"), (3, "pentagonal"), (4, "hexagonal")] {
        let stream: Vec<String> = (0..10)
            .map(|n| quotient_sum_shifted(k, n).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("{name:<11} {}", stream.join(" "));
        for n in 0..50 {
            assert_eq!(quotient_sum(k, n)?, polygonal_closed(k, n)?);
        }
    }
    assert!(verify_block_split(5, 4, |i| (i / 4).into()));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
