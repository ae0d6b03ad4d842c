// Which positions survive a strike-out of period j+1, and where they go.

use moessner::elision::{drop_index, is_dropped, keep_index};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for j in 1..=4 {
        let kept: Vec<u64> = (0..8).map(|x| keep_index(j, x)).collect::<Result<_, _>>()?;
        let dropped: Vec<u64> = (0..4).map(|x| drop_index(j, x)).collect::<Result<_, _>>()?;
        println!("j={j} kept {kept:?} dropped {dropped:?}");
        assert!(kept.iter().all(|&y| !is_dropped(j, y)));
        assert!(dropped.iter().all(|&y| is_dropped(j, y)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
