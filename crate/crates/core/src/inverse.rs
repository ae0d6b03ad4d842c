//! Running the process backwards.
//!
//! Start from `x |-> (x + 1)^n` and, at step `t`, take backward differences
//! while splicing the monomial `C(n, n-1-t) (q + 1)^(n-1-t)` into every
//! `(t + 2)`-th position. After `n` steps the function is constant one.

use std::cell::RefCell;
use std::rc::Rc;

use num_traits::Signed;
use thiserror::Error;

use crate::numeric::{backward_difference, Nat};
use crate::oracles::{binomial, pow_u64};
use crate::process::ForwardChain;
use crate::process::InitRule;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InverseError {
    #[error("step {t} is out of range for exponent {n}")]
    Step { t: u64, n: u64 },
    #[error("prefix length must be at least 1")]
    EmptyPrefix,
    #[error("backward difference went negative at index {0}")]
    Negative(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Seed { n: u64 },
    Step { t: u64, n: u64 },
}

enum Source {
    Seed,
    Step { prev: Rc<EnumeratedFn>, t: u64 },
}

/// A function on the naturals with a value cache.
pub struct EnumeratedFn {
    pub provenance: Provenance,
    n: u64,
    source: Source,
    memo: RefCell<Vec<Option<Nat>>>,
}

impl EnumeratedFn {
    pub fn value(&self, x: u64) -> Result<Nat, InverseError> {
        if let Some(Some(v)) = self.memo.borrow().get(x as usize) {
            return Ok(v.clone());
        }
        let v = match &self.source {
            Source::Seed => pow_u64(x + 1, self.n),
            Source::Step { prev, t } => {
                let p = t + 2;
                let (q, r) = (x / p, x % p);
                if r == p - 1 {
                    let m = self.n - 1 - t;
                    binomial(self.n, m) * pow_u64(q + 1, m)
                } else {
                    let y = (p - 1) * q + r;
                    // fill the cache of `prev` first so the closure below is
                    // a plain lookup
                    prev.value(y)?;
                    if y > 0 {
                        prev.value(y - 1)?;
                    }
                    let d = backward_difference(|i| prev.value(i).expect("cached"), y);
                    if d.is_negative() {
                        return Err(InverseError::Negative(x));
                    }
                    d.to_biguint().expect("non-negative")
                }
            }
        };
        let mut memo = self.memo.borrow_mut();
        if memo.len() <= x as usize {
            memo.resize(x as usize + 1, None);
        }
        memo[x as usize] = Some(v.clone());
        Ok(v)
    }

    pub fn prefix(&self, len: u64) -> Result<Vec<Nat>, InverseError> {
        (0..len).map(|x| self.value(x)).collect()
    }
}

/// `x |-> (x + 1)^n`.
pub fn seed(n: u64) -> Rc<EnumeratedFn> {
    Rc::new(EnumeratedFn {
        provenance: Provenance::Seed { n },
        n,
        source: Source::Seed,
        memo: RefCell::new(Vec::new()),
    })
}

/// Undoes iteration `t` (counting from the last one performed) for exponent `n`.
pub fn inverse_step(f: Rc<EnumeratedFn>, t: u64, n: u64) -> Result<Rc<EnumeratedFn>, InverseError> {
    if t >= n {
        return Err(InverseError::Step { t, n });
    }
    Ok(Rc::new(EnumeratedFn {
        provenance: Provenance::Step { t, n },
        n,
        source: Source::Step { prev: f, t },
        memo: RefCell::new(Vec::new()),
    }))
}

/// The seed prefix followed by the prefix after each of the `n` steps.
pub fn run_inverse(n: u64, len: u64) -> Result<Vec<Vec<Nat>>, InverseError> {
    if len == 0 {
        return Err(InverseError::EmptyPrefix);
    }
    let mut f = seed(n);
    let mut out = vec![f.prefix(len)?];
    for t in 0..n {
        f = inverse_step(f, t, n)?;
        out.push(f.prefix(len)?);
    }
    Ok(out)
}

/// The `t`-th inverse prefix equals the forward intermediate `f_t` for
/// every `t <= n`.
pub fn check_roundtrip(n: u64, len: u64) -> bool {
    let Ok(tables) = run_inverse(n, len) else {
        return false;
    };
    let mut chain = ForwardChain::new(n, InitRule::ones());
    tables
        .iter()
        .enumerate()
        .all(|(t, row)| chain.prefix(t as u64, len).is_ok_and(|fwd| &fwd == row))
}
