use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{Expr, Params};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid program: {0}")]
    Invalid(String),
    #[error("body is negative ({value}) at history {history:?}")]
    NegativeBody { value: i128, history: Vec<i128> },
    #[error("table index {index} outside f[0..{len}]")]
    TableIndex { index: i128, len: usize },
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("program is not Markov: {0}")]
    NotMarkov(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub lower: u8,
    pub bound: Expr,
}

impl LevelSpec {
    pub fn from0(bound: Expr) -> Self {
        LevelSpec { lower: 0, bound }
    }

    pub fn from1(bound: Expr) -> Self {
        LevelSpec { lower: 1, bound }
    }
}

/// `sum(i1=lower1..bound1) ... sum(in=lowern..boundn) body`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummationProgram {
    pub depth: usize,
    pub levels: Vec<LevelSpec>,
    pub body: Expr,
    #[serde(default)]
    pub params: Params,
}

impl SummationProgram {
    pub fn new(levels: Vec<LevelSpec>, body: Expr, params: Params) -> Self {
        SummationProgram {
            depth: levels.len(),
            levels,
            body,
            params,
        }
    }

    /// Structural checks: level count, lower bounds, history references,
    /// divisors and parameter names.
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.levels.len() != self.depth {
            return Err(EngineError::Invalid(format!(
                "depth is {} but {} levels are given",
                self.depth,
                self.levels.len()
            )));
        }
        for (idx, spec) in self.levels.iter().enumerate() {
            if spec.lower > 1 {
                return Err(EngineError::Invalid(format!(
                    "level {} has lower bound {}, expected 0 or 1",
                    idx + 1,
                    spec.lower
                )));
            }
            self.check_expr(&spec.bound, idx + 1)?;
        }
        self.check_expr(&self.body, self.depth + 1)
    }

    fn check_expr(&self, e: &Expr, level: usize) -> Result<(), EngineError> {
        let mut err = None;
        let where_ = if level > self.depth {
            "body".to_string()
        } else {
            format!("level {level}")
        };
        e.walk(&mut |node| {
            if err.is_some() {
                return;
            }
            err = match node {
                Expr::Prev if level == 1 => Some(format!("{where_}: Prev has no previous index")),
                Expr::Hist(j) if *j == 0 || *j >= level => {
                    Some(format!("{where_}: Hist({j}) is not an earlier index"))
                }
                Expr::Div(_, d) => match **d {
                    Expr::Lit(v) if v > 0 => None,
                    _ => Some(format!("{where_}: divisor must be a positive literal")),
                },
                Expr::Param(p) if !self.params.scalars.contains_key(p) => {
                    Some(format!("{where_}: unknown parameter `{p}`"))
                }
                Expr::Table(_) if self.params.table.is_none() => {
                    Some(format!("{where_}: table `f` is not set"))
                }
                _ => None,
            };
        });
        match err {
            Some(msg) => Err(EngineError::Invalid(msg)),
            None => Ok(()),
        }
    }

    /// Every bound and the body read at most the previous index, the level
    /// number and parameters.
    pub fn is_markov(&self) -> bool {
        let levels = self.levels.iter().map(|l| &l.bound).enumerate();
        let body = std::iter::once((self.depth, &self.body));
        levels.chain(body).all(|(idx, e)| markov_expr(e, idx + 1))
    }

    /// The nested sums as one line of text.
    pub fn unfold_display(&self) -> String {
        let mut out = String::new();
        for (idx, spec) in self.levels.iter().enumerate() {
            let level = idx + 1;
            out.push_str(&format!(
                "sum(i{level}={}..{}) ",
                spec.lower,
                spec.bound.render(level)
            ));
        }
        out.push_str(&self.body.render(self.depth + 1));
        out
    }
}

fn markov_expr(e: &Expr, level: usize) -> bool {
    let mut ok = true;
    e.walk(&mut |node| match node {
        Expr::Hist(j) if *j + 1 != level => ok = false,
        Expr::SumHist | Expr::ProdHist if level > 2 => ok = false,
        Expr::Custom(c) if !c.markov => ok = false,
        _ => {}
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::super::expr::*;
    use super::*;

    fn moessner2() -> SummationProgram {
        SummationProgram::new(
            vec![
                LevelSpec::from0(param("x")),
                LevelSpec::from0(div(mul(lit(2), Expr::Prev), 1)),
            ],
            lit(1),
            Params::new().with("x", 3u32),
        )
    }

    #[test]
    fn display_moessner_and_depth_zero() {
        assert!(moessner2()
            .unfold_display()
            .contains("sum(i1=0..x) sum(i2=0..2*i1/1) 1"));
        let p = SummationProgram::new(vec![], lit(1), Params::new());
        assert_eq!(p.unfold_display(), "1");
    }

    #[test]
    fn display_parenthesizes_by_precedence() {
        let e = mul(add(lit(1), Expr::Prev), sub(lit(3), Expr::Hist(1)));
        assert_eq!(e.render(3), "(1+i2)*(3-i1)");
        assert_eq!(add(param("x"), Expr::SumHist).render(4), "x+(i1+i2+i3)");
        assert_eq!(Expr::ProdHist.render(1), "1");
    }

    #[test]
    fn validation_catches_bad_references() {
        let bad = SummationProgram::new(vec![LevelSpec::from0(Expr::Prev)], lit(1), Params::new());
        assert!(matches!(bad.validate(), Err(EngineError::Invalid(_))));
        let bad = SummationProgram::new(
            vec![LevelSpec::from0(lit(1)), LevelSpec::from0(Expr::Hist(2))],
            lit(1),
            Params::new(),
        );
        assert!(bad.validate().is_err());
        let bad = SummationProgram::new(
            vec![LevelSpec::from0(lit(1)), LevelSpec::from0(Expr::Div(Box::new(lit(4)), Box::new(Expr::Prev)))],
            lit(1),
            Params::new(),
        );
        assert!(bad.validate().is_err());
        let bad = SummationProgram::new(vec![LevelSpec::from0(param("y"))], lit(1), Params::new());
        assert!(bad.validate().is_err());
        let mut bad = moessner2();
        bad.depth = 3;
        assert!(bad.validate().is_err());
        let mut bad = moessner2();
        bad.levels[0].lower = 2;
        assert!(bad.validate().is_err());
        assert!(moessner2().validate().is_ok());
        // the body sits one level below the last sum
        let ok = SummationProgram::new(vec![LevelSpec::from0(lit(2))], mul(lit(2), Expr::Hist(1)), Params::new());
        assert!(ok.validate().is_ok());
    }

    #[test]
    fn markov_classification() {
        assert!(moessner2().is_markov());
        assert!(SummationProgram::new(vec![], lit(1), Params::new()).is_markov());
        let full = SummationProgram::new(
            vec![
                LevelSpec::from0(param("x")),
                LevelSpec::from0(add(param("x"), Expr::SumHist)),
                LevelSpec::from0(add(param("x"), Expr::SumHist)),
            ],
            lit(1),
            Params::new().with("x", 1u32),
        );
        assert!(!full.is_markov());
    }

    #[test]
    fn json_roundtrip() {
        let p = moessner2();
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.contains("\"x\":\"3\""));
        let back: SummationProgram = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
