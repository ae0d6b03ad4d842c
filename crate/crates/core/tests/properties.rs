//! Randomized invariants across modules.

use moessner::engine::{add, div, evaluate, evaluate_counting, evaluate_memoized, lit, mul, param, Expr};
use moessner::engine::{LevelSpec, Params, SummationProgram};
use moessner::inverse::run_inverse;
use moessner::numeric::{bit_length, times_halving, Nat};
use moessner::oeis::{parse_bfile, to_bfile, BFileEntry};
use moessner::oracles;
use moessner::presets::{build, expected, PresetParams};
use moessner::process::{forward_intermediate, run_process, ForwardChain, InitRule};
use proptest::prelude::*;

fn eval(id: &str, text: &str) -> Nat {
    evaluate(&build(id, &PresetParams::parse(text).unwrap()).unwrap()).unwrap()
}

fn pow(x: u64, n: u64) -> Nat {
    oracles::pow_u64(x + 1, n)
}

/// Levels with bounds `(a * prev + c) / d`, which read only the previous index.
fn markov_program() -> impl Strategy<Value = SummationProgram> {
    let level = (0i64..3, 0i64..3, 1i64..3, 0u8..2);
    (0u64..6, proptest::collection::vec(level, 0..5)).prop_map(|(x, specs)| {
        let levels = specs
            .into_iter()
            .enumerate()
            .map(|(k, (a, c, d, lower))| {
                let bound = if k == 0 {
                    param("x")
                } else {
                    div(add(mul(lit(a), Expr::Prev), lit(c)), d)
                };
                LevelSpec { lower, bound }
            })
            .collect();
        SummationProgram::new(levels, lit(1), Params::new().with("x", x))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn memoized_agrees_with_naive(prog in markov_program()) {
        prop_assert!(prog.is_markov());
        let naive = evaluate(&prog).unwrap();
        prop_assert_eq!(evaluate_memoized(&prog).unwrap(), naive.clone());
        let counted = evaluate_counting(&prog).unwrap();
        prop_assert_eq!(counted.value, naive.clone());
        prop_assert_eq!(Nat::from(counted.leaves), naive);
    }

    #[test]
    fn json_roundtrip_keeps_value(prog in markov_program()) {
        let text = serde_json::to_string(&prog).unwrap();
        let back: SummationProgram = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(evaluate(&back).unwrap(), evaluate(&prog).unwrap());
    }

    #[test]
    fn shift_from_zero_to_one(x in 0u64..10, n in 0u64..6) {
        prop_assert_eq!(eval("binomial", &format!("x={x},n={n}")), eval("multiset", &format!("x={},n={n}", x + 1)));
    }

    #[test]
    fn seeded_variants_reduce_to_powers(x in 0u64..6, n in 0u64..5) {
        let want = pow(x, n);
        prop_assert_eq!(eval("moessner_init", &format!("x={x},n={n},init=const:1")), want.clone());
        prop_assert_eq!(eval("moessner_init_plus", &format!("x={x},n={n},init=indicator:1:0")), want.clone());
        prop_assert_eq!(eval("fold", &format!("x={x},n={n},rule=moessner")), want.clone());
        prop_assert_eq!(eval("moessner", &format!("x={x},n={n}")), want);
    }

    #[test]
    fn seeded_variants_match_the_list_process(x in 0u64..6, n in 0u64..4, a in 0u64..4, d in 0u64..4) {
        for text in [format!("x={x},n={n},init=const:{a}"), format!("x={x},n={n},init=indicator:{a}:{d}")] {
            for id in ["moessner_init", "moessner_init_plus"] {
                let p = PresetParams::parse(&text).unwrap();
                prop_assert_eq!(evaluate(&build(id, &p).unwrap()).unwrap(), expected(id, &p).unwrap(), "{} {}", id, text);
            }
        }
    }

    #[test]
    fn factorial_ignores_bound_order(perm in (0usize..8).prop_flat_map(|n| Just((0..n as u64).collect::<Vec<_>>()).prop_shuffle())) {
        let n = perm.len() as u64;
        let text = if perm.is_empty() {
            "n=0".to_string()
        } else {
            let p: Vec<String> = perm.iter().map(|v| v.to_string()).collect();
            format!("n={n},perm={}", p.join(":"))
        };
        prop_assert_eq!(eval("factorial_permuted", &text), oracles::factorial(n));
    }

    #[test]
    fn inverse_splices_monomials(n in 1u64..6, len in 1u64..40) {
        let tables = run_inverse(n, len).unwrap();
        let mut chain = ForwardChain::new(n, InitRule::ones());
        for (t, row) in tables.iter().enumerate().skip(1) {
            let step = t as u64 - 1;
            let p = step + 2;
            let m = n - 1 - step;
            for (x, v) in row.iter().enumerate() {
                let x = x as u64;
                if x % p == p - 1 {
                    prop_assert_eq!(v, &(oracles::binomial(n, m) * oracles::pow_u64(x / p + 1, m)));
                }
            }
            prop_assert_eq!(row, &chain.prefix(t as u64, len).unwrap());
        }
    }

    #[test]
    fn process_rows_are_forward_intermediates(n in 0u64..6, len in 1u64..30) {
        let (row, trace) = run_process(n, len, &InitRule::ones()).unwrap();
        prop_assert_eq!(row.len() as u64, len);
        for step in &trace.steps {
            let j = step.before.iteration.unwrap();
            for x in 0..len.min(step.summed.len() as u64) {
                prop_assert_eq!(&step.summed.values[x as usize], &forward_intermediate(n, j, x).unwrap());
            }
        }
    }

    #[test]
    fn halving_multiplies(x in 0u64..1_000_000, c in 0u64..1_000_000) {
        let r = times_halving(&Nat::from(x), &Nat::from(c));
        prop_assert_eq!(r.value, Nat::from(x) * Nat::from(c));
        prop_assert_eq!(r.multiplications, 0);
        prop_assert!(r.additions <= 2 * bit_length(x));
    }

    #[test]
    fn bfile_roundtrip(start in -5i64..5, values in proptest::collection::vec(any::<i64>(), 1..30)) {
        let entries: Vec<BFileEntry> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| BFileEntry { index: (start + i as i64).into(), value: v.into() })
            .collect();
        let text = to_bfile(&entries);
        prop_assert_eq!(parse_bfile(&text).unwrap(), entries);
    }
}
