// Every preset of the catalog at a small parameter point, next to its
// oracle.

use moessner::engine::evaluate;
use moessner::presets::{self, PresetParams, CATALOG};

fn sample(id: &str) -> &'static str {
    match id {
        "factorial_permuted" => "n=4,perm=2:0:3:1",
        "product_of_table" => "n=3,f=2:3:4:5",
        "long1" => "x=3,n=2,a=2",
        "long2" | "another_round" => "x=3,n=2,a=2,d=3",
        "fold" => "x=3,n=3,rule=prev+1",
        "raney" => "x=1,n=4,s=2",
        "rosen_triple" => "n1=2,n2=3,n3=4",
        "polygonal" => "k=3,n=4",
        "a125860" => "x=2,n=3",
        "moessner_init" => "x=3,n=3,init=const:2",
        "moessner_init_plus" => "x=3,n=3,init=indicator:2:1",
        _ => "x=3,n=4",
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for info in CATALOG {
        let mut params = PresetParams::parse(sample(info.id))?;
        // drop what the preset does not take
        params.scalars.retain(|k, _| info.params.iter().any(|p| p.name == k.as_str()));
        let got = evaluate(&presets::build(info.id, &params)?)?;
        let want = presets::expected(info.id, &params)?;
        let mark = if got == want { "ok" } else { "differs" };
        println!("{:<20} {:<28} {:>12} {:>12}  {mark}", info.id, params.to_string(), got, want);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
