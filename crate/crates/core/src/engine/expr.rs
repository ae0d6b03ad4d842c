use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::numeric::Nat;

/// Bound and body expressions.
///
/// Indices are 1-based: at level `k` the history is `i_1 .. i_{k-1}`.
/// A body is evaluated as if it sat at level `depth + 1`, so `Prev` in a
/// body is the innermost index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Lit(i64),
    /// A named scalar parameter (`x`, `n`, `a`, ...).
    Param(String),
    /// `f(e)` for the program's table parameter.
    Table(Box<Expr>),
    /// The current level number `k`.
    Level,
    /// `i_{k-1}`.
    Prev,
    /// `i_j` for `j < k`.
    Hist(usize),
    /// `i_1 + ... + i_{k-1}`, zero at level 1.
    SumHist,
    /// `i_1 * ... * i_{k-1}`, one at level 1.
    ProdHist,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Floor division by a positive literal.
    Div(Box<Expr>, Box<Expr>),
    /// `then` when `cond` is zero, `else` otherwise.
    IfZero {
        cond: Box<Expr>,
        then: Box<Expr>,
        #[serde(rename = "else")]
        otherwise: Box<Expr>,
    },
    #[serde(skip)]
    Custom(CustomFn),
}

pub type CustomBody = Arc<dyn Fn(usize, &[i128]) -> i128 + Send + Sync>;

/// A Rust closure over `(level, history)`. Not serializable.
#[derive(Clone)]
pub struct CustomFn {
    pub name: String,
    pub markov: bool,
    pub f: CustomBody,
}

impl CustomFn {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize, &[i128]) -> i128 + Send + Sync + 'static,
    {
        CustomFn {
            name: name.into(),
            markov: false,
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomFn({})", self.name)
    }
}

impl PartialEq for CustomFn {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.f, &other.f)
    }
}

pub fn lit(v: i64) -> Expr {
    Expr::Lit(v)
}

pub fn param(name: &str) -> Expr {
    Expr::Param(name.to_string())
}

pub fn table(e: Expr) -> Expr {
    Expr::Table(Box::new(e))
}

pub fn add(a: Expr, b: Expr) -> Expr {
    Expr::Add(Box::new(a), Box::new(b))
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    Expr::Sub(Box::new(a), Box::new(b))
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b))
}

pub fn div(a: Expr, d: i64) -> Expr {
    Expr::Div(Box::new(a), Box::new(Expr::Lit(d)))
}

pub fn if_zero(cond: Expr, then: Expr, otherwise: Expr) -> Expr {
    Expr::IfZero {
        cond: Box::new(cond),
        then: Box::new(then),
        otherwise: Box::new(otherwise),
    }
}

impl Expr {
    /// Calls `visit` on every node, parents first.
    pub fn walk<'a>(&'a self, visit: &mut dyn FnMut(&'a Expr)) {
        visit(self);
        match self {
            Expr::Table(e) => e.walk(visit),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            Expr::IfZero {
                cond,
                then,
                otherwise,
            } => {
                cond.walk(visit);
                then.walk(visit);
                otherwise.walk(visit);
            }
            _ => {}
        }
    }

    pub(crate) fn render(&self, level: usize) -> String {
        self.render_prec(level, 0)
    }

    fn render_prec(&self, level: usize, ctx: u8) -> String {
        let (prec, text) = match self {
            Expr::Lit(v) => (3, v.to_string()),
            Expr::Param(p) => (3, p.clone()),
            Expr::Table(e) => (3, format!("f({})", e.render_prec(level, 0))),
            Expr::Level => (3, "k".to_string()),
            Expr::Prev => (3, format!("i{}", level.saturating_sub(1))),
            Expr::Hist(j) => (3, format!("i{j}")),
            Expr::SumHist => hist_fold(level, '+', "0"),
            Expr::ProdHist => hist_fold(level, '*', "1"),
            Expr::Add(a, b) => (
                1,
                format!("{}+{}", a.render_prec(level, 1), b.render_prec(level, 2)),
            ),
            Expr::Sub(a, b) => (
                1,
                format!("{}-{}", a.render_prec(level, 1), b.render_prec(level, 2)),
            ),
            Expr::Mul(a, b) => (
                2,
                format!("{}*{}", a.render_prec(level, 2), b.render_prec(level, 3)),
            ),
            Expr::Div(a, b) => (
                2,
                format!("{}/{}", a.render_prec(level, 2), b.render_prec(level, 3)),
            ),
            Expr::IfZero {
                cond,
                then,
                otherwise,
            } => (
                3,
                format!(
                    "(if {}=0 then {} else {})",
                    cond.render_prec(level, 0),
                    then.render_prec(level, 0),
                    otherwise.render_prec(level, 0)
                ),
            ),
            Expr::Custom(c) => (3, format!("<{}>", c.name)),
        };
        if prec < ctx {
            format!("({text})")
        } else {
            text
        }
    }
}

fn hist_fold(level: usize, op: char, empty: &str) -> (u8, String) {
    match level.saturating_sub(1) {
        0 => (3, empty.to_string()),
        1 => (3, "i1".to_string()),
        m => {
            let terms: Vec<String> = (1..=m).map(|j| format!("i{j}")).collect();
            (3, format!("({})", terms.join(&op.to_string())))
        }
    }
}

/// Named parameter values of a program: scalars plus an optional table `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub scalars: BTreeMap<String, Nat>,
    pub table: Option<Vec<Nat>>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: impl Into<Nat>) -> Self {
        self.scalars.insert(name.to_string(), value.into());
        self
    }

    pub fn with_table(mut self, f: Vec<Nat>) -> Self {
        self.table = Some(f);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Nat> {
        self.scalars.get(name)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ParamRepr {
    Scalar(String),
    Table(Vec<String>),
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map: BTreeMap<&str, ParamRepr> = self
            .scalars
            .iter()
            .map(|(k, v)| (k.as_str(), ParamRepr::Scalar(v.to_string())))
            .collect();
        if let Some(f) = &self.table {
            map.insert("f", ParamRepr::Table(f.iter().map(|v| v.to_string()).collect()));
        }
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = BTreeMap::<String, ParamRepr>::deserialize(d)?;
        let parse = |s: &str| s.parse::<Nat>().map_err(|e| D::Error::custom(format!("{s:?}: {e}")));
        let mut out = Params::new();
        for (k, v) in raw {
            match v {
                ParamRepr::Scalar(s) => {
                    out.scalars.insert(k, parse(&s)?);
                }
                ParamRepr::Table(vs) if k == "f" => {
                    out.table = Some(vs.iter().map(|s| parse(s)).collect::<Result<_, _>>()?);
                }
                ParamRepr::Table(_) => {
                    return Err(D::Error::custom(format!("only `f` may be a table, got `{k}`")))
                }
            }
        }
        Ok(out)
    }
}
