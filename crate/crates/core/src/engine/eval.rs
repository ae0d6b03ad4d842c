use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::expr::{CustomFn, Expr};
use super::program::{EngineError, SummationProgram};
use crate::numeric::Nat;

/// Result of a counting evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    #[serde(serialize_with = "crate::numeric::ser_decimal")]
    pub value: Nat,
    pub additions: u64,
    pub leaves: u64,
}

/// Expressions with parameters and the table resolved to machine integers.
enum CExpr {
    Lit(i128),
    Table(Box<CExpr>),
    Level,
    Prev,
    Hist(usize),
    SumHist,
    ProdHist,
    Add(Box<CExpr>, Box<CExpr>),
    Sub(Box<CExpr>, Box<CExpr>),
    Mul(Box<CExpr>, Box<CExpr>),
    Div(Box<CExpr>, i128),
    IfZero(Box<CExpr>, Box<CExpr>, Box<CExpr>),
    Custom(CustomFn),
}

struct Compiled {
    lowers: Vec<i128>,
    bounds: Vec<CExpr>,
    body: CExpr,
    table: Vec<i128>,
}

fn to_i128(v: &Nat, what: &'static str) -> Result<i128, EngineError> {
    v.to_i128().ok_or(EngineError::Overflow(what))
}

fn compile_expr(e: &Expr, p: &SummationProgram) -> Result<CExpr, EngineError> {
    let b = |e: &Expr| compile_expr(e, p).map(Box::new);
    Ok(match e {
        Expr::Lit(v) => CExpr::Lit(*v as i128),
        Expr::Param(name) => {
            let v = p
                .params
                .get(name)
                .ok_or_else(|| EngineError::Invalid(format!("unknown parameter `{name}`")))?;
            CExpr::Lit(to_i128(v, "a parameter")?)
        }
        Expr::Table(i) => CExpr::Table(b(i)?),
        Expr::Level => CExpr::Level,
        Expr::Prev => CExpr::Prev,
        Expr::Hist(j) => CExpr::Hist(*j),
        Expr::SumHist => CExpr::SumHist,
        Expr::ProdHist => CExpr::ProdHist,
        Expr::Add(x, y) => CExpr::Add(b(x)?, b(y)?),
        Expr::Sub(x, y) => CExpr::Sub(b(x)?, b(y)?),
        Expr::Mul(x, y) => CExpr::Mul(b(x)?, b(y)?),
        Expr::Div(x, d) => match **d {
            Expr::Lit(v) if v > 0 => CExpr::Div(b(x)?, v as i128),
            _ => return Err(EngineError::Invalid("divisor must be a positive literal".into())),
        },
        Expr::IfZero {
            cond,
            then,
            otherwise,
        } => CExpr::IfZero(b(cond)?, b(then)?, b(otherwise)?),
        Expr::Custom(c) => CExpr::Custom(c.clone()),
    })
}

fn compile(p: &SummationProgram) -> Result<Compiled, EngineError> {
    p.validate()?;
    let table = match &p.params.table {
        Some(f) => f.iter().map(|v| to_i128(v, "a table entry")).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    Ok(Compiled {
        lowers: p.levels.iter().map(|l| l.lower as i128).collect(),
        bounds: p
            .levels
            .iter()
            .map(|l| compile_expr(&l.bound, p))
            .collect::<Result<_, _>>()?,
        body: compile_expr(&p.body, p)?,
        table,
    })
}

impl CExpr {
    /// Evaluates at `level` (1-based) given `hist = i_1 .. i_{level-1}`.
    fn eval(&self, level: usize, hist: &[i128], table: &[i128]) -> Result<i128, EngineError> {
        const OV: EngineError = EngineError::Overflow("an expression");
        Ok(match self {
            CExpr::Lit(v) => *v,
            CExpr::Table(i) => {
                let idx = i.eval(level, hist, table)?;
                usize::try_from(idx)
                    .ok()
                    .and_then(|u| table.get(u).copied())
                    .ok_or(EngineError::TableIndex {
                        index: idx,
                        len: table.len(),
                    })?
            }
            CExpr::Level => level as i128,
            CExpr::Prev => hist[hist.len() - 1],
            CExpr::Hist(j) => hist[j - 1],
            CExpr::SumHist => hist.iter().try_fold(0i128, |a, &v| a.checked_add(v)).ok_or(OV)?,
            CExpr::ProdHist => hist.iter().try_fold(1i128, |a, &v| a.checked_mul(v)).ok_or(OV)?,
            CExpr::Add(a, b) => a
                .eval(level, hist, table)?
                .checked_add(b.eval(level, hist, table)?)
                .ok_or(OV)?,
            CExpr::Sub(a, b) => a
                .eval(level, hist, table)?
                .checked_sub(b.eval(level, hist, table)?)
                .ok_or(OV)?,
            CExpr::Mul(a, b) => a
                .eval(level, hist, table)?
                .checked_mul(b.eval(level, hist, table)?)
                .ok_or(OV)?,
            CExpr::Div(a, d) => a.eval(level, hist, table)?.div_euclid(*d),
            CExpr::IfZero(c, t, e) => {
                if c.eval(level, hist, table)? == 0 {
                    t.eval(level, hist, table)?
                } else {
                    e.eval(level, hist, table)?
                }
            }
            CExpr::Custom(c) => (c.f)(level, hist),
        })
    }

    fn constant(&self) -> Option<i128> {
        match self {
            CExpr::Lit(v) => Some(*v),
            _ => None,
        }
    }
}

impl Compiled {
    fn leaf(&self, hist: &[i128]) -> Result<u128, EngineError> {
        let v = self.body.eval(hist.len() + 1, hist, &self.table)?;
        u128::try_from(v).map_err(|_| EngineError::NegativeBody {
            value: v,
            history: hist.to_vec(),
        })
    }
}

struct Tally {
    value: u128,
    additions: u64,
    leaves: u64,
}

/// Depth-first enumeration over an explicit level stack.
///
/// Each non-empty sum of `m` terms is charged `m - 1` additions, where an
/// empty inner sum still counts as a (zero) term of its parent.
fn run(p: &SummationProgram) -> Result<Tally, EngineError> {
    const OV: EngineError = EngineError::Overflow("the accumulated sum");
    let c = compile(p)?;
    let d = p.depth;
    if d == 0 {
        let v = c.leaf(&[])?;
        return Ok(Tally {
            value: v,
            additions: 0,
            leaves: 1,
        });
    }
    let const_body = c.body.constant();
    let mut idx = vec![0i128; d];
    let mut hi = vec![0i128; d];
    let mut sum = vec![0u128; d];
    let mut terms = vec![0u64; d];
    let mut additions = 0u64;
    let mut leaves = 0u64;
    let mut level = 0usize;
    'enter: loop {
        let bound = c.bounds[level].eval(level + 1, &idx[..level], &c.table)?;
        let lo = c.lowers[level];
        sum[level] = 0;
        terms[level] = 0;
        if bound >= lo {
            if level + 1 < d {
                idx[level] = lo;
                hi[level] = bound;
                level += 1;
                continue 'enter;
            }
            let count = (bound - lo + 1) as u64;
            match const_body {
                Some(v) if v >= 0 => {
                    sum[level] = (v as u128).checked_mul(count as u128).ok_or(OV)?;
                }
                _ => {
                    let mut acc = 0u128;
                    for i in lo..=bound {
                        idx[level] = i;
                        acc = acc.checked_add(c.leaf(&idx)?).ok_or(OV)?;
                    }
                    sum[level] = acc;
                }
            }
            terms[level] = count;
            leaves += count;
        }
        // close finished levels, then advance the innermost unfinished one
        loop {
            if terms[level] > 0 {
                additions += terms[level] - 1;
            }
            let v = sum[level];
            if level == 0 {
                return Ok(Tally {
                    value: v,
                    additions,
                    leaves,
                });
            }
            level -= 1;
            sum[level] = sum[level].checked_add(v).ok_or(OV)?;
            terms[level] += 1;
            if idx[level] < hi[level] {
                idx[level] += 1;
                level += 1;
                continue 'enter;
            }
        }
    }
}

/// Value of the nested sum by direct enumeration.
pub fn evaluate(p: &SummationProgram) -> Result<Nat, EngineError> {
    run(p).map(|t| Nat::from(t.value))
}

/// As [`evaluate`], also reporting additions and body evaluations.
pub fn evaluate_counting(p: &SummationProgram) -> Result<EvalReport, EngineError> {
    run(p).map(|t| EvalReport {
        value: Nat::from(t.value),
        additions: t.additions,
        leaves: t.leaves,
    })
}

/// Evaluation with one table of sub-sums per level, indexed by the value
/// of the previous index.
///
/// A forward pass finds the range of previous-index values reachable at each
/// level; a backward pass fills `V(k, p) = sum_{i=lo}^{bound_k(p)} V(k+1, i)`
/// from a running prefix of the level below.
pub fn evaluate_memoized(p: &SummationProgram) -> Result<Nat, EngineError> {
    if !p.is_markov() {
        return Err(EngineError::NotMarkov(
            "a bound or the body reads more than the previous index".into(),
        ));
    }
    let c = compile(p)?;
    let d = p.depth;
    if d == 0 {
        return Ok(Nat::from(c.leaf(&[])?));
    }
    let bound_at = |level: usize, prev: Option<i128>| -> Result<i128, EngineError> {
        match prev {
            None => c.bounds[level - 1].eval(level, &[], &c.table),
            Some(v) => c.bounds[level - 1].eval(level, &prev_hist(level, v), &c.table),
        }
    };
    // reach[k] = highest value the index of level k can take (k >= 1);
    // None once every sum at that level is empty.
    let mut reach: Vec<Option<i128>> = vec![None; d + 1];
    let b1 = bound_at(1, None)?;
    reach[1] = (b1 >= c.lowers[0]).then_some(b1);
    for k in 2..=d {
        let Some(top) = reach[k - 1] else { break };
        let lo_prev = c.lowers[k - 2];
        let mut best: Option<i128> = None;
        for prev in lo_prev..=top {
            let b = bound_at(k, Some(prev))?;
            if b >= c.lowers[k - 1] {
                best = Some(best.map_or(b, |m| m.max(b)));
            }
        }
        reach[k] = best;
    }
    let Some(top_d) = reach[d] else {
        return Ok(Nat::zero());
    };
    // memo[k][p - lo_k] for the index p of level k; starts with the bodies
    let lo_d = c.lowers[d - 1];
    let mut memo: Vec<Nat> = (lo_d..=top_d)
        .map(|i| c.body.eval(d + 1, &prev_hist(d + 1, i), &c.table).and_then(|v| {
            u128::try_from(v).map(Nat::from).map_err(|_| EngineError::NegativeBody {
                value: v,
                history: vec![i],
            })
        }))
        .collect::<Result<_, _>>()?;
    for k in (1..=d).rev() {
        let lo_k = c.lowers[k - 1];
        // prefix[m] = sum of memo[0..m]
        let mut prefix = Vec::with_capacity(memo.len() + 1);
        let mut acc = Nat::zero();
        prefix.push(acc.clone());
        for v in &memo {
            acc += v;
            prefix.push(acc.clone());
        }
        let range_sum = |b: i128| -> Nat {
            if b < lo_k {
                return Nat::zero();
            }
            let m = ((b - lo_k + 1) as usize).min(memo.len());
            prefix[m].clone()
        };
        if k == 1 {
            return Ok(range_sum(b1));
        }
        let lo_prev = c.lowers[k - 2];
        let top_prev = reach[k - 1].expect("reachable level above a reachable level");
        memo = (lo_prev..=top_prev)
            .map(|prev| bound_at(k, Some(prev)).map(range_sum))
            .collect::<Result<_, _>>()?;
    }
    unreachable!("the loop returns at level 1")
}

/// A history whose only meaningful entry is the previous index. Markov
/// expressions never read the others.
fn prev_hist(level: usize, prev: i128) -> Vec<i128> {
    let mut h = vec![0i128; level - 1];
    h[level - 2] = prev;
    h
}

#[cfg(test)]
mod tests {
    use super::super::expr::*;
    use super::super::program::LevelSpec;
    use super::*;

    fn moessner(x: u64, n: usize) -> SummationProgram {
        let mut levels = Vec::new();
        if n > 0 {
            levels.push(LevelSpec::from0(param("x")));
        }
        for k in 2..=n as i64 {
            levels.push(LevelSpec::from0(div(mul(lit(k), Expr::Prev), k - 1)));
        }
        SummationProgram::new(levels, lit(1), Params::new().with("x", x))
    }

    #[test]
    fn moessner_values_and_counts() {
        assert_eq!(evaluate(&moessner(3, 3)).unwrap(), Nat::from(64u32));
        let r = evaluate_counting(&moessner(2, 3)).unwrap();
        assert_eq!((r.value, r.additions, r.leaves), (Nat::from(27u32), 26, 27));
        assert_eq!(evaluate_memoized(&moessner(9, 5)).unwrap(), Nat::from(100000u32));
    }

    #[test]
    fn depth_zero() {
        let p = SummationProgram::new(vec![], lit(1), Params::new());
        assert_eq!(evaluate(&p).unwrap(), Nat::from(1u32));
        let r = evaluate_counting(&p).unwrap();
        assert_eq!((r.additions, r.leaves), (0, 1));
        assert_eq!(evaluate_memoized(&p).unwrap(), Nat::from(1u32));
    }

    #[test]
    fn empty_inner_sums_are_zero_terms() {
        // sum(i1=0..2) sum(i2=0..1-i1) 1 = 2 + 1 + 0
        let p = SummationProgram::new(
            vec![LevelSpec::from0(lit(2)), LevelSpec::from0(sub(lit(1), Expr::Prev))],
            lit(1),
            Params::new(),
        );
        let r = evaluate_counting(&p).unwrap();
        assert_eq!(r.value, Nat::from(3u32));
        assert_eq!(r.leaves, 3);
        // inner sums: 1 + 0 additions; outer: 3 terms, 2 additions
        assert_eq!(r.additions, 3);
        assert_eq!(evaluate_memoized(&p).unwrap(), Nat::from(3u32));
        let none = SummationProgram::new(vec![LevelSpec::from0(lit(-1))], lit(1), Params::new());
        assert_eq!(evaluate_counting(&none).unwrap().value, Nat::zero());
        assert_eq!(evaluate_memoized(&none).unwrap(), Nat::zero());
    }

    #[test]
    fn negative_body_is_reported() {
        let p = SummationProgram::new(
            vec![LevelSpec::from0(lit(3))],
            sub(lit(1), Expr::Prev),
            Params::new(),
        );
        match evaluate(&p) {
            Err(EngineError::NegativeBody { value, history }) => {
                assert_eq!(value, -1);
                assert_eq!(history, vec![2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_markov_is_rejected_by_memo() {
        let p = SummationProgram::new(
            vec![
                LevelSpec::from0(lit(1)),
                LevelSpec::from0(lit(1)),
                LevelSpec::from0(add(Expr::Hist(1), Expr::Hist(2))),
            ],
            lit(1),
            Params::new(),
        );
        assert!(matches!(evaluate_memoized(&p), Err(EngineError::NotMarkov(_))));
        assert!(evaluate(&p).is_ok());
    }

    #[test]
    fn table_lookup_and_out_of_range() {
        let f: Vec<Nat> = [2u32, 3, 4].map(Nat::from).to_vec();
        let levels = (1..=3)
            .map(|k| LevelSpec::from1(table(lit(k - 1))))
            .collect();
        let p = SummationProgram::new(levels, lit(1), Params::new().with_table(f.clone()));
        assert_eq!(evaluate(&p).unwrap(), Nat::from(24u32));
        let bad = SummationProgram::new(
            vec![LevelSpec::from1(table(lit(5)))],
            lit(1),
            Params::new().with_table(f),
        );
        assert!(matches!(evaluate(&bad), Err(EngineError::TableIndex { .. })));
    }

    #[test]
    fn custom_closure_body() {
        let sq = CustomFn::new("square", |_, h: &[i128]| h[h.len() - 1] * h[h.len() - 1]);
        let p = SummationProgram::new(vec![LevelSpec::from0(lit(3))], Expr::Custom(sq), Params::new());
        assert_eq!(evaluate(&p).unwrap(), Nat::from(14u32));
        assert!(serde_json::to_string(&p).is_err());
    }
}
