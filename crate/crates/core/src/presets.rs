//! The catalog of named nested-sum programs.
//!
//! Each preset has a parameter schema, a builder producing a
//! [`SummationProgram`], and an `expected` value computed by the oracles
//! (or, for two tables without a closed form, read from a bundled fixture).
//!
//! Generic folds put `x` at level 1 and `rule(k - 1, i_{k-1})` at level
//! `k >= 2`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::engine::{
    add, div, lit, mul, param, sub, table, EngineError, Expr, LevelSpec, Params, SummationProgram,
};
use crate::numeric::Nat;
use crate::oeis;
use crate::oracles::{self, OracleError};
use crate::process::InitRule;

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset `{0}`")]
    Unknown(String),
    #[error("missing parameter `{0}`")]
    Missing(String),
    #[error("parameter `{field}`: {msg}")]
    BadValue { field: String, msg: String },
    #[error("parameter `{0}` is not accepted by this preset")]
    Unexpected(String),
    #[error("no oracle for {0}")]
    NoOracle(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Fixture(#[from] oeis::OeisError),
}

fn bad(field: &str, msg: impl Into<String>) -> PresetError {
    PresetError::BadValue {
        field: field.to_string(),
        msg: msg.into(),
    }
}

/// The inner-bound rule of a generic fold, as a function of `j = k - 1`
/// and the previous index.
#[derive(Clone, Debug, PartialEq)]
pub enum FoldRule {
    /// `floor((j + 1) * prev / j)`
    Moessner,
    /// `prev + s`
    PrevPlus(u64),
    /// `j`
    LevelIndex,
    /// `n - j`
    Falling,
    /// `(j + 1) * x`
    XFold,
    /// a constant
    Const(i64),
    /// any expression; `Level` is `k`, so `j` is `Level - 1`
    Custom(Expr),
}

impl FoldRule {
    fn bound(&self, k: usize) -> Expr {
        let k = k as i64;
        let j = k - 1;
        match self {
            FoldRule::Moessner => div(mul(lit(j + 1), Expr::Prev), j),
            FoldRule::PrevPlus(s) => add(Expr::Prev, lit(*s as i64)),
            FoldRule::LevelIndex => lit(j),
            FoldRule::Falling => sub(param("n"), lit(j)),
            FoldRule::XFold => mul(lit(j + 1), param("x")),
            FoldRule::Const(c) => lit(*c),
            FoldRule::Custom(e) => e.clone(),
        }
    }

    /// Parses `moessner`, `prev+S`, `j`, `n-j`, `xfold` or `const:C`.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "moessner" => Some(FoldRule::Moessner),
            "j" => Some(FoldRule::LevelIndex),
            "n-j" => Some(FoldRule::Falling),
            "xfold" => Some(FoldRule::XFold),
            _ => {
                if let Some(v) = s.strip_prefix("prev+") {
                    v.parse().ok().map(FoldRule::PrevPlus)
                } else if let Some(v) = s.strip_prefix("const:") {
                    v.parse().ok().map(FoldRule::Const)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for FoldRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoldRule::Moessner => write!(f, "moessner"),
            FoldRule::PrevPlus(s) => write!(f, "prev+{s}"),
            FoldRule::LevelIndex => write!(f, "j"),
            FoldRule::Falling => write!(f, "n-j"),
            FoldRule::XFold => write!(f, "xfold"),
            FoldRule::Const(c) => write!(f, "const:{c}"),
            FoldRule::Custom(_) => write!(f, "custom"),
        }
    }
}

/// Parameter values for a preset.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PresetParams {
    pub scalars: BTreeMap<String, Nat>,
    pub table: Option<Vec<Nat>>,
    pub perm: Option<Vec<u64>>,
    pub init: Option<InitRule>,
    pub rule: Option<FoldRule>,
}

impl PresetParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, v: u64) -> Self {
        self.scalars.insert(name.to_string(), Nat::from(v));
        self
    }

    pub fn with_table(mut self, f: &[u64]) -> Self {
        self.table = Some(f.iter().map(|&v| Nat::from(v)).collect());
        self
    }

    pub fn with_perm(mut self, p: &[u64]) -> Self {
        self.perm = Some(p.to_vec());
        self
    }

    pub fn with_init(mut self, init: InitRule) -> Self {
        self.init = Some(init);
        self
    }

    pub fn with_rule(mut self, rule: FoldRule) -> Self {
        self.rule = Some(rule);
        self
    }

    pub fn set(&mut self, name: &str, v: u64) {
        self.scalars.insert(name.to_string(), Nat::from(v));
    }

    /// Parses `K=V` pairs separated by commas. Tables and permutations use
    /// colons: `f=2:3:4`, `perm=2:0:1`.
    pub fn parse(text: &str) -> Result<Self, PresetError> {
        let mut out = PresetParams::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| bad(item, "expected KEY=VALUE"))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "f" => {
                    let vals = v
                        .split(':')
                        .map(|s| s.parse::<Nat>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| bad(k, e.to_string()))?;
                    out.table = Some(vals);
                }
                "perm" => {
                    let vals = v
                        .split(':')
                        .map(|s| s.parse::<u64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| bad(k, e.to_string()))?;
                    out.perm = Some(vals);
                }
                "init" => {
                    out.init = Some(InitRule::parse(v).ok_or_else(|| bad(k, format!("cannot parse `{v}`")))?)
                }
                "rule" => {
                    out.rule = Some(FoldRule::parse(v).ok_or_else(|| bad(k, format!("cannot parse `{v}`")))?)
                }
                _ => {
                    let n = v.parse::<Nat>().map_err(|e| bad(k, e.to_string()))?;
                    out.scalars.insert(k.to_string(), n);
                }
            }
        }
        Ok(out)
    }

    /// Merges `other` over `self`.
    pub fn merged(mut self, other: &PresetParams) -> Self {
        for (k, v) in &other.scalars {
            self.scalars.insert(k.clone(), v.clone());
        }
        if other.table.is_some() {
            self.table = other.table.clone();
        }
        if other.perm.is_some() {
            self.perm = other.perm.clone();
        }
        if other.init.is_some() {
            self.init = other.init.clone();
        }
        if other.rule.is_some() {
            self.rule = other.rule.clone();
        }
        self
    }
}

impl PresetParams {
    /// `(key, value)` pairs in display order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> =
            self.scalars.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        let join = |v: Vec<String>| v.join(":");
        if let Some(t) = &self.table {
            out.push(("f".into(), join(t.iter().map(|v| v.to_string()).collect())));
        }
        if let Some(p) = &self.perm {
            out.push(("perm".into(), join(p.iter().map(|v| v.to_string()).collect())));
        }
        if let Some(i) = &self.init {
            out.push(("init".into(), i.to_string()));
        }
        if let Some(r) = &self.rule {
            out.push(("rule".into(), r.to_string()));
        }
        out
    }
}

impl fmt::Display for PresetParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Scalar,
    Table,
    Perm,
    Init,
    Rule,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: Option<&'static str>,
}

const fn scalar(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Scalar,
        default: None,
    }
}

const fn scalar_or(name: &'static str, d: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Scalar,
        default: Some(d),
    }
}

const fn other(name: &'static str, kind: ParamKind, default: Option<&'static str>) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        default,
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PresetInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    pub oracle: &'static str,
    pub oeis: Option<&'static str>,
}

const XN: &[ParamSpec] = &[scalar("x"), scalar("n")];
const N: &[ParamSpec] = &[scalar("n")];

macro_rules! preset {
    ($id:expr, $summary:expr, $params:expr, $oracle:expr, $oeis:expr) => {
        PresetInfo {
            id: $id,
            summary: $summary,
            params: $params,
            oracle: $oracle,
            oeis: $oeis,
        }
    };
}

pub const CATALOG: &[PresetInfo] = &[
    preset!("moessner", "(x+1)^n with bounds floor(k*prev/(k-1))", XN, "pow_fast", Some("A000079")),
    preset!("moessner_stolid", "(x+1)^n with every bound x", XN, "pow_fast", Some("A000079")),
    preset!(
        "moessner_init",
        "moessner bounds, body init(g(n, i_n))",
        &[scalar("x"), scalar("n"), other("init", ParamKind::Init, Some("ones"))],
        "sieve_process",
        None
    ),
    preset!(
        "moessner_init_plus",
        "n+1 levels of moessner bounds, body init(g(n+1, i_{n+1}))",
        &[scalar("x"), scalar("n"), other("init", ParamKind::Init, Some("indicator:1:0"))],
        "sieve_process",
        None
    ),
    preset!("long1", "a*(x+1)^n: moessner bounds, body a", &[scalar("x"), scalar("n"), scalar("a")], "long1_closed", None),
    preset!(
        "long2",
        "(a+d*x)*(x+1)^n: moessner_init_plus with seed a,d,d,...",
        &[scalar("x"), scalar("n"), scalar("a"), scalar("d")],
        "long2_closed",
        None
    ),
    preset!("another_round", "(x+1)^(n+1): moessner_init with seed 1,2,3,...", XN, "pow_fast", None),
    preset!(
        "fold",
        "level 1 bound x, level k bound rule(k-1, prev), body 1",
        &[scalar("x"), scalar("n"), other("rule", ParamKind::Rule, Some("moessner"))],
        "per rule",
        None
    ),
    preset!("factorial_rising", "(n+1)!: bound of level k is k", N, "factorial", Some("A000142")),
    preset!("factorial_falling", "n!: bounds 0, n-1, ..., 1", N, "factorial", Some("A000142")),
    preset!(
        "factorial_permuted",
        "n!: bounds are a permutation of 0..n-1",
        &[scalar("n"), other("perm", ParamKind::Perm, Some("identity"))],
        "factorial",
        None
    ),
    preset!("factorial_multiple", "n!*(x+1): fold with rule j", XN, "factorial", None),
    preset!("xfold_factorial", "prod (i*x+1): fold with rule (j+1)*x", XN, "multifactorial", Some("A001147")),
    preset!(
        "product_of_table",
        "f(0)*...*f(n): n+1 levels from 1 to f(k-1)",
        &[scalar("n"), other("f", ParamKind::Table, None)],
        "product_table",
        None
    ),
    preset!(
        "rosen_triple",
        "n1*n2*n3 as three loops from 1",
        &[scalar("n1"), scalar("n2"), scalar("n3")],
        "product",
        None
    ),
    preset!("binomial", "C(x+n, n): bounds x, prev, prev, ...", XN, "binomial", Some("A000217")),
    preset!("multiset", "C(x+n-1, n): binomial bounds, sums from 1", XN, "multiset", None),
    preset!("catalan", "C_n: bounds 0, prev+1, prev+1, ...", N, "catalan", Some("A000108")),
    preset!("catalan_from_one", "C_n: bounds 1, prev+1, ..., sums from 1", N, "catalan", Some("A000108")),
    preset!("catalan_convolved", "(x+1)*C(2n+x, n)/(n+x+1)", XN, "catalan_convolved", Some("A000245")),
    preset!(
        "raney",
        "(x+1)*C((s+1)n+x, n)/(sn+x+1): bounds x, prev+s, ...",
        &[scalar("x"), scalar("n"), scalar("s")],
        "raney",
        Some("A002293")
    ),
    preset!("positive_integers", "n+1: bounds 1, then products of earlier indices", N, "successor", None),
    preset!("a125860", "bound of level k is x + i_1 + ... + i_{k-1}", XN, "fixture A125860", Some("A125860")),
    preset!("a137273", "bounds 0, 1, then i_{k-2} + i_{k-1}", N, "fixture A137273", Some("A137273")),
    preset!("fibonacci", "F_{n+1}: bounds 0, 1-prev, 1-prev, ...", N, "fibonacci", Some("A000045")),
    preset!("euler_zigzag", "E_n: bounds n-1, then (n-k)-prev", N, "euler_zigzag", Some("A000111")),
    preset!(
        "a002449",
        "A002449_{n+2}: n+1 levels, bounds b-1, then b*prev+1",
        &[scalar("n"), scalar_or("b", "2")],
        "a002449_rec",
        Some("A002449")
    ),
    preset!("a002449_irwin", "A002449_{n+2}: from 1, bounds 2, 2*prev; body 2*i_n", N, "a002449_rec", Some("A002449")),
    preset!("fibonacci_lahlou", "F_{n+1}: n-1 levels from 1, bounds 1, 3-prev; body 3-i_n", N, "fibonacci", Some("A000045")),
    preset!(
        "polygonal",
        "k*n(n+1)/2+n+1 as sum of floor(i/k) for i up to k(n+1)",
        &[scalar("k"), scalar("n")],
        "polygonal_closed",
        Some("A000326")
    ),
];

pub fn info(id: &str) -> Result<&'static PresetInfo, PresetError> {
    CATALOG
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| PresetError::Unknown(id.to_string()))
}

/// The catalog as JSON.
pub fn list() -> serde_json::Value {
    serde_json::to_value(CATALOG).expect("catalog serializes")
}

/// A preset bound to concrete parameters.
#[derive(Clone, Debug)]
pub struct PresetInstance {
    pub id: &'static str,
    pub params: PresetParams,
    pub program: SummationProgram,
    pub oracle_ref: &'static str,
    pub oeis_id: Option<&'static str>,
}

pub fn instance(id: &str, params: &PresetParams) -> Result<PresetInstance, PresetError> {
    let info = info(id)?;
    let program = build(id, params)?;
    Ok(PresetInstance {
        id: info.id,
        params: params.clone(),
        program,
        oracle_ref: info.oracle,
        oeis_id: info.oeis,
    })
}

/// Schema-checked view of the parameters.
struct Args<'a> {
    p: &'a PresetParams,
}

impl<'a> Args<'a> {
    fn check(info: &PresetInfo, p: &'a PresetParams) -> Result<Self, PresetError> {
        let accepts = |name: &str, kind: ParamKind| info.params.iter().any(|s| s.name == name && s.kind == kind);
        for k in p.scalars.keys() {
            if !accepts(k, ParamKind::Scalar) {
                return Err(PresetError::Unexpected(k.clone()));
            }
        }
        for (present, name, kind) in [
            (p.table.is_some(), "f", ParamKind::Table),
            (p.perm.is_some(), "perm", ParamKind::Perm),
            (p.init.is_some(), "init", ParamKind::Init),
            (p.rule.is_some(), "rule", ParamKind::Rule),
        ] {
            if present && !accepts(name, kind) {
                return Err(PresetError::Unexpected(name.to_string()));
            }
        }
        for spec in info.params {
            let missing = match spec.kind {
                ParamKind::Scalar => !p.scalars.contains_key(spec.name),
                ParamKind::Table => p.table.is_none(),
                _ => false,
            };
            if missing && spec.default.is_none() {
                return Err(PresetError::Missing(spec.name.to_string()));
            }
        }
        Ok(Args { p })
    }

    fn nat(&self, name: &str) -> Nat {
        self.p.scalars.get(name).cloned().unwrap_or_else(|| default_scalar(name))
    }

    fn u64(&self, name: &str) -> Result<u64, PresetError> {
        self.nat(name).to_u64().ok_or_else(|| bad(name, "too large"))
    }

    /// Used for depths and literal bounds.
    fn small(&self, name: &str) -> Result<usize, PresetError> {
        let v = self.u64(name)?;
        if v > 1 << 20 {
            return Err(bad(name, "too large for a nesting depth or literal bound"));
        }
        Ok(v as usize)
    }

    fn init(&self, default: InitRule) -> InitRule {
        self.p.init.clone().unwrap_or(default)
    }

    fn rule(&self) -> FoldRule {
        self.p.rule.clone().unwrap_or(FoldRule::Moessner)
    }

    fn table(&self, n: usize) -> Result<Vec<Nat>, PresetError> {
        let f = self.p.table.clone().ok_or_else(|| PresetError::Missing("f".into()))?;
        if f.len() < n + 1 {
            return Err(bad("f", format!("needs {} entries, got {}", n + 1, f.len())));
        }
        Ok(f)
    }

    fn perm(&self, n: usize) -> Result<Vec<u64>, PresetError> {
        let p = self.p.perm.clone().unwrap_or_else(|| (0..n as u64).collect());
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != (0..n as u64).collect::<Vec<_>>() {
            return Err(bad("perm", format!("must be a permutation of 0..{n}")));
        }
        Ok(p)
    }
}

fn default_scalar(name: &str) -> Nat {
    info_default(name).unwrap_or_else(Nat::one)
}

fn info_default(name: &str) -> Option<Nat> {
    CATALOG
        .iter()
        .flat_map(|p| p.params.iter())
        .find(|s| s.name == name && s.kind == ParamKind::Scalar)
        .and_then(|s| s.default)
        .and_then(|d| d.parse().ok())
}

fn moessner_levels(n: usize) -> Vec<LevelSpec> {
    let mut levels = Vec::with_capacity(n);
    if n > 0 {
        levels.push(LevelSpec::from0(param("x")));
    }
    for k in 2..=n {
        levels.push(LevelSpec::from0(FoldRule::Moessner.bound(k)));
    }
    levels
}

fn fold_levels(x: Expr, n: usize, rule: &FoldRule) -> Vec<LevelSpec> {
    let mut levels = Vec::with_capacity(n);
    if n > 0 {
        levels.push(LevelSpec::from0(x));
    }
    for k in 2..=n {
        levels.push(LevelSpec::from0(rule.bound(k)));
    }
    levels
}

/// `init(floor((n + 1) * prev / n))`, the body of the init variants.
fn init_body(init: &InitRule, n: usize) -> Expr {
    let arg = if n == 0 {
        param("x")
    } else {
        div(mul(lit(n as i64 + 1), Expr::Prev), n as i64)
    };
    init.to_expr(arg)
}

fn init_params(mut params: Params, init: &InitRule) -> Params {
    match init {
        InitRule::Const(c) => params = params.with("c", c.clone()),
        InitRule::Indicator { a, d } => params = params.with("a", a.clone()).with("d", d.clone()),
        InitRule::Successor => {}
    }
    params
}

fn program_params(a: &Args, names: &[&str]) -> Params {
    names
        .iter()
        .fold(Params::new(), |p, name| p.with(name, a.nat(name)))
}

pub fn build(id: &str, params: &PresetParams) -> Result<SummationProgram, PresetError> {
    let info = info(id)?;
    let a = Args::check(info, params)?;
    let one = || lit(1);
    let program = match info.id {
        "moessner" => {
            let n = a.small("n")?;
            SummationProgram::new(moessner_levels(n), one(), program_params(&a, &["x", "n"]))
        }
        "moessner_stolid" => {
            let n = a.small("n")?;
            let levels = (0..n).map(|_| LevelSpec::from0(param("x"))).collect();
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n"]))
        }
        "moessner_init" | "another_round" => {
            let n = a.small("n")?;
            let init = if info.id == "another_round" {
                InitRule::Successor
            } else {
                a.init(InitRule::ones())
            };
            let params = init_params(program_params(&a, &["x", "n"]), &init);
            SummationProgram::new(moessner_levels(n), init_body(&init, n), params)
        }
        "moessner_init_plus" | "long2" => {
            let n = a.small("n")?;
            let init = if info.id == "long2" {
                InitRule::Indicator {
                    a: a.nat("a"),
                    d: a.nat("d"),
                }
            } else {
                a.init(InitRule::Indicator {
                    a: Nat::one(),
                    d: Nat::from(0u32),
                })
            };
            let params = init_params(program_params(&a, &["x", "n"]), &init);
            SummationProgram::new(moessner_levels(n + 1), init_body(&init, n + 1), params)
        }
        "long1" => {
            let n = a.small("n")?;
            SummationProgram::new(moessner_levels(n), param("a"), program_params(&a, &["x", "n", "a"]))
        }
        "fold" => {
            let n = a.small("n")?;
            let levels = fold_levels(param("x"), n, &a.rule());
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n"]))
        }
        "factorial_rising" => {
            let n = a.small("n")?;
            let levels = (1..=n).map(|k| LevelSpec::from0(lit(k as i64))).collect();
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "factorial_falling" => {
            let n = a.small("n")?;
            let mut levels = Vec::with_capacity(n);
            if n > 0 {
                levels.push(LevelSpec::from0(lit(0)));
            }
            for k in 2..=n {
                levels.push(LevelSpec::from0(lit((n - k + 1) as i64)));
            }
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "factorial_permuted" => {
            let n = a.small("n")?;
            let levels = a
                .perm(n)?
                .into_iter()
                .map(|b| LevelSpec::from0(lit(b as i64)))
                .collect();
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "factorial_multiple" => {
            let n = a.small("n")?;
            let levels = fold_levels(param("x"), n, &FoldRule::LevelIndex);
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n"]))
        }
        "xfold_factorial" => {
            let n = a.small("n")?;
            let levels = fold_levels(param("x"), n, &FoldRule::XFold);
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n"]))
        }
        "product_of_table" => {
            let n = a.small("n")?;
            let f = a.table(n)?;
            let levels = (0..=n)
                .map(|i| LevelSpec::from1(table(lit(i as i64))))
                .collect();
            SummationProgram::new(levels, one(), program_params(&a, &["n"]).with_table(f))
        }
        "rosen_triple" => {
            let levels = ["n1", "n2", "n3"].iter().map(|v| LevelSpec::from1(param(v))).collect();
            SummationProgram::new(levels, one(), program_params(&a, &["n1", "n2", "n3"]))
        }
        "binomial" | "multiset" => {
            let n = a.small("n")?;
            let mut levels = fold_levels(param("x"), n, &FoldRule::Custom(Expr::Prev));
            if info.id == "multiset" {
                for l in &mut levels {
                    l.lower = 1;
                }
            }
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n"]))
        }
        "catalan" | "catalan_from_one" => {
            let n = a.small("n")?;
            let from_one = info.id == "catalan_from_one";
            let mut levels = fold_levels(lit(from_one as i64), n, &FoldRule::PrevPlus(1));
            if from_one {
                for l in &mut levels {
                    l.lower = 1;
                }
            }
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "catalan_convolved" => {
            let n = a.small("n")?;
            let levels = fold_levels(param("x"), n, &FoldRule::PrevPlus(1));
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n"]))
        }
        "raney" => {
            let n = a.small("n")?;
            let levels = fold_levels(param("x"), n, &FoldRule::Custom(add(Expr::Prev, param("s"))));
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n", "s"]))
        }
        "positive_integers" => {
            let n = a.small("n")?;
            let levels = fold_levels(lit(1), n, &FoldRule::Custom(Expr::ProdHist));
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "a125860" => {
            let n = a.small("n")?;
            let levels = (0..n)
                .map(|_| LevelSpec::from0(add(param("x"), Expr::SumHist)))
                .collect();
            SummationProgram::new(levels, one(), program_params(&a, &["x", "n"]))
        }
        "a137273" => {
            let n = a.small("n")?;
            let levels = (1..=n)
                .map(|k| {
                    LevelSpec::from0(match k {
                        1 => lit(0),
                        2 => lit(1),
                        _ => add(Expr::Hist(k - 2), Expr::Hist(k - 1)),
                    })
                })
                .collect();
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "fibonacci" => {
            let n = a.small("n")?;
            let levels = fold_levels(lit(0), n, &FoldRule::Custom(sub(lit(1), Expr::Prev)));
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "euler_zigzag" => {
            let n = a.small("n")?;
            let levels = (1..=n)
                .map(|k| {
                    let offset = lit(n as i64 - k as i64);
                    LevelSpec::from0(if k == 1 { offset } else { sub(offset, Expr::Prev) })
                })
                .collect();
            SummationProgram::new(levels, one(), program_params(&a, &["n"]))
        }
        "a002449" => {
            let n = a.small("n")?;
            let b = a.small("b")?;
            if b == 0 {
                return Err(bad("b", "branching must be at least 1"));
            }
            let rule = FoldRule::Custom(add(mul(lit(b as i64), Expr::Prev), lit(1)));
            let levels = fold_levels(lit(b as i64 - 1), n + 1, &rule);
            SummationProgram::new(levels, one(), program_params(&a, &["n", "b"]))
        }
        "a002449_irwin" => {
            let n = a.small("n")?;
            if n == 0 {
                return Err(bad("n", "must be at least 1"));
            }
            let doubled = || mul(lit(2), Expr::Prev);
            let mut levels = fold_levels(lit(2), n, &FoldRule::Custom(doubled()));
            for l in &mut levels {
                l.lower = 1;
            }
            SummationProgram::new(levels, doubled(), program_params(&a, &["n"]))
        }
        "fibonacci_lahlou" => {
            let n = a.small("n")?;
            if n < 2 {
                return Err(bad("n", "must be at least 2"));
            }
            let three_minus = || sub(lit(3), Expr::Prev);
            let mut levels = fold_levels(lit(1), n - 1, &FoldRule::Custom(three_minus()));
            for l in &mut levels {
                l.lower = 1;
            }
            SummationProgram::new(levels, three_minus(), program_params(&a, &["n"]))
        }
        "polygonal" => {
            let n = a.small("n")?;
            let k = a.small("k")?;
            if k == 0 {
                return Err(bad("k", "must be at least 1"));
            }
            let levels = vec![LevelSpec::from0(lit((k * (n + 1)) as i64))];
            SummationProgram::new(levels, div(Expr::Prev, k as i64), program_params(&a, &["k", "n"]))
        }
        other => unreachable!("catalog entry `{other}` has no builder"),
    };
    program.validate()?;
    Ok(program)
}

fn stolid_product(first: u64, rest: impl Iterator<Item = i128>) -> Nat {
    rest.fold(Nat::from(first) + 1u32, |acc, b| {
        if b < 0 {
            Nat::from(0u32)
        } else {
            acc * Nat::from(b as u128 + 1)
        }
    })
}

/// The oracle value for the same parameters.
pub fn expected(id: &str, params: &PresetParams) -> Result<Nat, PresetError> {
    let info = info(id)?;
    let a = Args::check(info, params)?;
    let pow = |x: u64, n: u64| oracles::pow_u64(x + 1, n);
    let periods = |n: u64| -> Vec<u64> { (2..=n + 1).rev().collect() };
    let v = match info.id {
        "moessner" | "moessner_stolid" => pow(a.u64("x")?, a.u64("n")?),
        "moessner_init" => {
            let (x, n) = (a.u64("x")?, a.u64("n")?);
            let init = a.init(InitRule::ones());
            oracles::sieve_process(|y| init.apply(y), &periods(n), x as usize)
        }
        "moessner_init_plus" => {
            let (x, n) = (a.u64("x")?, a.u64("n")?);
            let init = a.init(InitRule::Indicator {
                a: Nat::one(),
                d: Nat::from(0u32),
            });
            oracles::sieve_process(|y| init.apply(y), &periods(n + 1), x as usize)
        }
        "long1" => oracles::long1_closed(a.u64("x")?, a.u64("n")?, &a.nat("a")),
        "long2" => oracles::long2_closed(a.u64("x")?, a.u64("n")?, &a.nat("a"), &a.nat("d")),
        "another_round" => pow(a.u64("x")?, a.u64("n")? + 1),
        "fold" => {
            let (x, n) = (a.u64("x")?, a.u64("n")?);
            let inner = |f: &dyn Fn(u64) -> i128| stolid_product(x, (2..=n).map(|k| f(k - 1)));
            match a.rule() {
                _ if n == 0 => Nat::one(),
                FoldRule::Moessner => pow(x, n),
                FoldRule::PrevPlus(s) => oracles::raney(s, x, n)?,
                FoldRule::LevelIndex => inner(&|j| j as i128),
                FoldRule::Falling => inner(&|j| n as i128 - j as i128),
                FoldRule::XFold => inner(&|j| (j as i128 + 1) * x as i128),
                FoldRule::Const(c) => inner(&|_| c as i128),
                FoldRule::Custom(_) => return Err(PresetError::NoOracle("a custom fold rule".into())),
            }
        }
        "factorial_rising" => oracles::factorial(a.u64("n")? + 1),
        "factorial_falling" | "factorial_permuted" => {
            if info.id == "factorial_permuted" {
                a.perm(a.small("n")?)?;
            }
            oracles::factorial(a.u64("n")?)
        }
        "factorial_multiple" => oracles::factorial(a.u64("n")?) * (a.nat("x") + 1u32),
        "xfold_factorial" => oracles::multifactorial(a.u64("x")?, a.u64("n")?),
        "product_of_table" => {
            let n = a.small("n")?;
            oracles::product_table(&a.table(n)?, n as u64)
        }
        "rosen_triple" => a.nat("n1") * a.nat("n2") * a.nat("n3"),
        "binomial" => {
            let (x, n) = (a.u64("x")?, a.u64("n")?);
            oracles::binomial(x + n, n)
        }
        "multiset" => oracles::multiset(a.u64("x")?, a.u64("n")?),
        "catalan" | "catalan_from_one" => oracles::catalan(a.u64("n")?),
        "catalan_convolved" => oracles::catalan_convolved(a.u64("x")?, a.u64("n")?)?,
        "raney" => oracles::raney(a.u64("s")?, a.u64("x")?, a.u64("n")?)?,
        "positive_integers" => a.nat("n") + 1u32,
        "a125860" => {
            let (x, n) = (a.u64("x")?, a.u64("n")?);
            oeis::bundled_value("A125860", oeis::antidiagonal_index(n, x))?
        }
        "a137273" => oeis::bundled_value("A137273", a.u64("n")?)?,
        "fibonacci" => oracles::fibonacci(a.u64("n")? + 1),
        "euler_zigzag" => oracles::euler_zigzag(a.u64("n")?),
        "a002449" => {
            let b = a.u64("b")?;
            if b == 0 {
                return Err(bad("b", "branching must be at least 1"));
            }
            oracles::tree_types(b, a.u64("n")? + 2)
        }
        "a002449_irwin" => {
            let n = a.u64("n")?;
            if n == 0 {
                return Err(bad("n", "must be at least 1"));
            }
            oracles::a002449_rec(n + 2)
        }
        "fibonacci_lahlou" => {
            let n = a.u64("n")?;
            if n < 2 {
                return Err(bad("n", "must be at least 2"));
            }
            oracles::fibonacci(n + 1)
        }
        "polygonal" => {
            let k = a.u64("k")?;
            if k == 0 {
                return Err(bad("k", "must be at least 1"));
            }
            oracles::polygonal_closed(k, a.u64("n")?)?
        }
        other => unreachable!("catalog entry `{other}` has no oracle"),
    };
    Ok(v)
}
