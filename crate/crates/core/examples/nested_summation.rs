// A hand-written summation program: build it, print it, round-trip it
// through JSON, and evaluate it three ways.

use moessner::engine::{
    add, div, evaluate, evaluate_counting, evaluate_memoized, lit, mul, param, Expr, LevelSpec, Params,
    SummationProgram,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // sum(i1=0..x) sum(i2=0..2*i1/1) sum(i3=0..3*i2/2) 1, which is (x+1)^3
    let levels = vec![
        LevelSpec::from0(param("x")),
        LevelSpec::from0(div(mul(lit(2), Expr::Prev), 1)),
        LevelSpec::from0(div(mul(lit(3), Expr::Prev), 2)),
    ];
    let prog = SummationProgram::new(levels, lit(1), Params::new().with("x", 4u32));
    prog.validate()?;
    println!("{}", prog.unfold_display());

    let json = serde_json::to_string_pretty(&prog)?;
    let back: SummationProgram = serde_json::from_str(&json)?;
    println!("{json}");

    let plain = evaluate(&back)?;
    let counted = evaluate_counting(&back)?;
    let memo = evaluate_memoized(&back)?;
    println!("value {plain}, additions {}, leaves {}, memoized {memo}", counted.additions, counted.leaves);
    assert_eq!(plain, memo);
    assert_eq!(plain, 125u32.into());

    // the same sum with an offset body: every leaf contributes i3 + 1
    let shifted = SummationProgram::new(back.levels.clone(), add(Expr::Prev, lit(1)), back.params.clone());
    println!("with body i3+1: {}", evaluate(&shifted)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
