// Walks the fixture manifest and checks each preset against its b-file.

use moessner::oeis::{check_preset_prefix, manifest, FixtureSource};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let source = FixtureSource::Bundled;
    for entry in manifest() {
        let report = check_preset_prefix(&entry.preset, Some(&entry.a_number), None, 8, &source)?;
        println!(
            "{:<18} {} {} from {}: {}/{}",
            entry.preset,
            report.a_number,
            report.vary,
            entry.from,
            report.matched(),
            report.rows.len()
        );
        assert!(report.aligned);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
