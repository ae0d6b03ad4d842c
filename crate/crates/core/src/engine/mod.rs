//! Nested summations with history-dependent bounds.
//!
//! A [`SummationProgram`] is a list of levels, each with a lower bound of 0
//! or 1 and an upper bound expression over the earlier indices, plus a body.
//! Programs are plain data: they serialize to JSON with expression nodes
//! tagged by constructor name, e.g.
//!
//! ```json
//! {"depth": 2,
//!  "levels": [{"lower": 0, "bound": {"Param": "x"}},
//!             {"lower": 0, "bound": {"Div": [{"Mul": [{"Lit": 2}, "Prev"]}, {"Lit": 1}]}}],
//!  "body": {"Lit": 1},
//!  "params": {"x": "3"}}
//! ```
//!
//! Bounds below the lower bound give empty sums (value 0).

mod eval;
mod expr;
mod program;

pub use eval::{evaluate, evaluate_counting, evaluate_memoized, EvalReport};
pub use expr::{add, div, if_zero, lit, mul, param, sub, table, CustomFn, Expr, Params};
pub use program::{EngineError, LevelSpec, SummationProgram};
