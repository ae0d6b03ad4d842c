//! The process on finite rows: strike out, take prefix sums, repeat.
//!
//! Streams are replaced by prefixes long enough that `m` values survive
//! all the strike-outs ([`required_length`]). The module also holds the
//! streamless intermediates `f_j`, and three ways of computing `(x + 1)^n`
//! with exact addition counts.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elision::{is_dropped, keep_index};
use crate::engine::{add, if_zero, EvalReport, Expr};
use crate::numeric::{bit_length, sigma_counting, times_halving, CountingNat, Nat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProcessError {
    #[error("strike-out period must be at least 2 (got {0})")]
    Period(u64),
    #[error("prefix length must be at least 1")]
    EmptyPrefix,
    #[error("iteration {j} is beyond exponent {n}")]
    Iteration { j: u64, n: u64 },
}

/// How the initial stream is filled. Serialized in its parse syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitRule {
    /// `c, c, c, ...`
    Const(Nat),
    /// `a, d, d, d, ...`
    Indicator { a: Nat, d: Nat },
    /// `1, 2, 3, ...`
    Successor,
}

impl InitRule {
    pub fn ones() -> Self {
        InitRule::Const(Nat::one())
    }

    pub fn apply(&self, y: u64) -> Nat {
        match self {
            InitRule::Const(c) => c.clone(),
            InitRule::Indicator { a, d } => {
                if y == 0 {
                    a.clone()
                } else {
                    d.clone()
                }
            }
            InitRule::Successor => Nat::from(y) + 1u32,
        }
    }

    /// The rule applied to `arg`, as an engine expression. Constants come
    /// from the parameters `c`, `a` and `d`.
    pub fn to_expr(&self, arg: Expr) -> Expr {
        match self {
            InitRule::Const(_) => Expr::Param("c".into()),
            InitRule::Indicator { .. } => {
                if_zero(arg, Expr::Param("a".into()), Expr::Param("d".into()))
            }
            InitRule::Successor => add(arg, Expr::Lit(1)),
        }
    }

    /// Parses `ones`, `const:C`, `indicator:A:D` or `succ`.
    pub fn parse(s: &str) -> Option<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["ones"] => Some(InitRule::ones()),
            ["succ"] | ["successor"] => Some(InitRule::Successor),
            ["const", c] => c.parse().ok().map(InitRule::Const),
            ["indicator", a, d] => Some(InitRule::Indicator {
                a: a.parse().ok()?,
                d: d.parse().ok()?,
            }),
            _ => None,
        }
    }
}

impl std::fmt::Display for InitRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitRule::Const(c) if c.is_one() => write!(f, "ones"),
            InitRule::Const(c) => write!(f, "const:{c}"),
            InitRule::Indicator { a, d } => write!(f, "indicator:{a}:{d}"),
            InitRule::Successor => write!(f, "succ"),
        }
    }
}

impl Serialize for InitRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InitRule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        InitRule::parse(&text).ok_or_else(|| serde::de::Error::custom(format!("bad init rule `{text}`")))
    }
}

/// A finite stream prefix with the exponent and iteration it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    #[serde(serialize_with = "ser_values")]
    pub values: Vec<Nat>,
    pub exponent: u64,
    /// `Some(j)` for rows produced by iteration `j`, `None` for the seed.
    pub iteration: Option<u64>,
}

fn ser_values<S: serde::Serializer>(v: &[Nat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Row {
    pub fn new(values: Vec<Nat>, exponent: u64, iteration: Option<u64>) -> Self {
        Row {
            values,
            exponent,
            iteration,
        }
    }

    pub fn from_u64(values: &[u64]) -> Self {
        Row::new(values.iter().map(|&v| Nat::from(v)).collect(), 0, None)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One iteration of the process.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProcessStep {
    pub period: u64,
    pub before: Row,
    pub filtered: Row,
    pub summed: Row,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProcessTrace {
    pub steps: Vec<ProcessStep>,
}

/// Strikes out every `p`-th element (the ones at positions `p-1, 2p-1, ...`).
pub fn drop_every(row: &Row, p: u64) -> Result<Row, ProcessError> {
    if p < 2 {
        return Err(ProcessError::Period(p));
    }
    let values = row
        .values
        .iter()
        .enumerate()
        .filter(|(i, _)| !is_dropped(p - 1, *i as u64))
        .map(|(_, v)| v.clone())
        .collect();
    Ok(Row::new(values, row.exponent, row.iteration))
}

pub fn prefix_sums(row: &Row) -> Row {
    let mut acc = Nat::zero();
    let values = row
        .values
        .iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect();
    Row::new(values, row.exponent, row.iteration)
}

/// Initial prefix length so that `m` values survive periods `n+1, n, ..., 2`.
pub fn required_length(n: u64, m: u64) -> Result<u64, ProcessError> {
    if m == 0 {
        return Err(ProcessError::EmptyPrefix);
    }
    let mut len = m;
    for p in 2..=n + 1 {
        len = keep_index(p - 1, len - 1).expect("period is at least 2") + 1;
    }
    Ok(len)
}

/// Runs `n` iterations (periods `n+1` down to `2`) on the seed given by
/// `init`, returning the first `m` values and the full trace.
///
/// The one-more-step variant with an indicator seed is `run_process(n + 1, ..)`.
pub fn run_process(n: u64, m: u64, init: &InitRule) -> Result<(Row, ProcessTrace), ProcessError> {
    let len = required_length(n, m)?;
    let mut row = Row::new((0..len).map(|y| init.apply(y)).collect(), n, None);
    let mut steps = Vec::with_capacity(n as usize);
    for j in (0..n).rev() {
        let period = j + 2;
        let mut before = row;
        before.iteration = Some(j);
        let filtered = drop_every(&before, period)?;
        let summed = prefix_sums(&filtered);
        row = summed.clone();
        steps.push(ProcessStep {
            period,
            before,
            filtered,
            summed,
        });
    }
    let mut out = row;
    out.values.truncate(m as usize);
    Ok((out, ProcessTrace { steps }))
}

/// The streamless intermediates `f_n = init`,
/// `f_j(x) = sum_{i=0}^{x} f_{j+1}(keep_index(j + 1, i))`, tabulated on
/// demand. `f_j` equals the row produced by iteration `j` of the process.
pub struct ForwardChain {
    n: u64,
    init: InitRule,
    tables: Vec<Vec<Nat>>,
}

impl ForwardChain {
    pub fn new(n: u64, init: InitRule) -> Self {
        ForwardChain {
            n,
            init,
            tables: vec![Vec::new(); n as usize + 1],
        }
    }

    /// `f_j(x)`; each table is extended once to cover the request.
    pub fn value(&mut self, j: u64, x: u64) -> Result<Nat, ProcessError> {
        if j > self.n {
            return Err(ProcessError::Iteration { j, n: self.n });
        }
        self.ensure(j, x + 1);
        Ok(self.tables[j as usize][x as usize].clone())
    }

    pub fn prefix(&mut self, j: u64, len: u64) -> Result<Vec<Nat>, ProcessError> {
        if j > self.n {
            return Err(ProcessError::Iteration { j, n: self.n });
        }
        self.ensure(j, len);
        Ok(self.tables[j as usize][..len as usize].to_vec())
    }

    fn ensure(&mut self, j: u64, len: u64) {
        if len == 0 || self.tables[j as usize].len() as u64 >= len {
            return;
        }
        // lengths needed from level j down to n
        let mut need = vec![0u64; self.n as usize + 1];
        need[j as usize] = len;
        for t in j..self.n {
            let (tu, l) = (t as usize, need[t as usize]);
            need[tu + 1] = need[tu + 1].max(keep_index(t + 1, l - 1).expect("t + 1 >= 1") + 1);
        }
        let n = self.n as usize;
        if (self.tables[n].len() as u64) < need[n] {
            self.tables[n] = (0..need[n]).map(|y| self.init.apply(y)).collect();
        }
        for t in (j as usize..n).rev() {
            if self.tables[t].len() as u64 >= need[t] {
                continue;
            }
            let above = &self.tables[t + 1];
            let mut acc = Nat::zero();
            let table = (0..need[t])
                .map(|i| {
                    acc += &above[keep_index(t as u64 + 1, i).expect("t + 1 >= 1") as usize];
                    acc.clone()
                })
                .collect();
            self.tables[t] = table;
        }
    }
}

/// `f_j(x)` for exponent `n` and the all-ones seed.
pub fn forward_intermediate(n: u64, j: u64, x: u64) -> Result<Nat, ProcessError> {
    ForwardChain::new(n, InitRule::ones()).value(j, x)
}

/// `(x + 1)^n` with one running-sum list per intermediate.
///
/// `f_j` is needed on `[0, (j + 1) x]`. Its list is a running sum over the
/// surviving entries of `f_{j+1}`, and entries that the next strike-out
/// would discard are never stored. Each list of length `L` costs `L - 1`
/// additions, so the total is `x * n (n + 1) / 2`. `leaves` is the number
/// of seed ones consumed.
pub fn dp_power(x: u64, n: u64) -> EvalReport {
    let (row, additions, leaves) = dp_rows(x, n);
    EvalReport {
        value: row[x as usize].clone(),
        additions,
        leaves,
    }
}

/// The whole list `[1^n, 2^n, ..., (x + 1)^n]` at the cost of [`dp_power`].
pub fn dp_power_prefix(x: u64, n: u64) -> (Vec<Nat>, u64) {
    let (row, additions, _) = dp_rows(x, n);
    (row, additions)
}

fn dp_rows(x: u64, n: u64) -> (Vec<Nat>, u64, u64) {
    if n == 0 {
        return (vec![Nat::one(); x as usize + 1], 0, 1);
    }
    let mut additions = 0u64;
    // kept[i] = f_{j+1}(keep_index(j + 1, i)), the only entries f_j reads
    let mut kept: Vec<Nat> = Vec::new();
    let mut leaves = 0u64;
    for j in (0..n).rev() {
        let len = (j + 1) * x + 1;
        let mut row = Vec::new();
        let mut acc: Option<Nat> = None;
        for i in 0..len {
            let term = if j + 1 == n {
                leaves += 1;
                Nat::one()
            } else {
                kept[i as usize].clone()
            };
            let v = match acc.take() {
                None => term,
                Some(a) => {
                    additions += 1;
                    a + term
                }
            };
            if j == 0 || !is_dropped(j, i) {
                row.push(v.clone());
            }
            acc = Some(v);
        }
        kept = row;
    }
    (kept, additions, leaves)
}

/// `(x + 1)^n` by the recursive chain without any caching: every call of
/// `f_j` is recomputed, `(x + 1)^n - 1` additions in total.
pub fn naive_power(x: u64, n: u64) -> EvalReport {
    fn f(j: u64, n: u64, y: u64, leaves: &mut u64) -> CountingNat {
        if j == n {
            *leaves += 1;
            return CountingNat::free(1u32);
        }
        sigma_counting(0, y as i64, |i| {
            f(j + 1, n, keep_index(j + 1, i).expect("j + 1 >= 1"), leaves)
        })
    }
    let mut leaves = 0;
    let r = f(0, n, x, &mut leaves);
    EvalReport {
        value: r.value,
        additions: r.additions,
        leaves,
    }
}

/// First `m` values of `(x + 1)^n` built by `n` rounds of
/// `entry_i <- times_halving(i + 1, entry_i)` starting from ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogAddPrefix {
    pub row: Row,
    /// `additions[k][i]`: cost of entry `i` in round `k + 1`.
    pub additions: Vec<Vec<u64>>,
    pub multiplications: u64,
}

impl LogAddPrefix {
    pub fn total_additions(&self) -> u64 {
        self.additions.iter().flatten().sum()
    }

    /// Every round obeys the `2 * bitlength(i + 1)` bound at every entry.
    pub fn within_bound(&self) -> bool {
        self.additions.iter().all(|round| {
            round
                .iter()
                .enumerate()
                .all(|(i, &a)| a <= 2 * bit_length(i as u64 + 1))
        })
    }
}

pub fn log_add_power_prefix(n: u64, m: u64) -> Result<LogAddPrefix, ProcessError> {
    if m == 0 {
        return Err(ProcessError::EmptyPrefix);
    }
    let mut entries: Vec<Nat> = vec![Nat::one(); m as usize];
    let mut additions = Vec::with_capacity(n as usize);
    let mut multiplications = 0;
    for _ in 0..n {
        let mut costs = Vec::with_capacity(m as usize);
        for (i, e) in entries.iter_mut().enumerate() {
            let r = times_halving(&Nat::from(i as u64 + 1), e);
            costs.push(r.additions);
            multiplications += r.multiplications;
            *e = r.value;
        }
        additions.push(costs);
    }
    Ok(LogAddPrefix {
        row: Row::new(entries, n, Some(0)),
        additions,
        multiplications,
    })
}
