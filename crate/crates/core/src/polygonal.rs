//! Polygonal numbers as sums of integer quotients.
//!
//! The `(k + 2)`-gonal number of rank `n` is `sum_{i=0}^{k(n+1)} floor(i / k)`.
//! The named families are usually stated one rank lower, with upper bound
//! `k n`; [`quotient_sum_shifted`] is that form, and
//! `quotient_sum_shifted(k, n + 1) = quotient_sum(k, n)`.

use thiserror::Error;

use crate::numeric::{sigma, Nat};
use crate::oracles::OracleError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonalError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn quotients(k: u64, hi: u64) -> Nat {
    sigma(0, hi as i64, |i| Nat::from(i / k))
}

/// `sum_{i=0}^{k (n + 1)} floor(i / k)`.
pub fn quotient_sum(k: u64, n: u64) -> Result<Nat, PolygonalError> {
    if k == 0 {
        return Err(PolygonalError::ZeroK);
    }
    Ok(quotients(k, k * (n + 1)))
}

/// `sum_{i=0}^{k n} floor(i / k)`.
pub fn quotient_sum_shifted(k: u64, n: u64) -> Result<Nat, PolygonalError> {
    if k == 0 {
        return Err(PolygonalError::ZeroK);
    }
    Ok(quotients(k, k * n))
}

/// `sum_{i=0}^{n} (k i + 1) = k n (n + 1) / 2 + n + 1`.
pub fn polygonal_closed(k: u64, n: u64) -> Result<Nat, PolygonalError> {
    if k == 0 {
        return Err(PolygonalError::ZeroK);
    }
    Ok(crate::oracles::polygonal_closed(k, n)?)
}

/// `sum_{i=0}^{(x+1)(y+1)} f(i) = sum_{i=0}^{x(y+1)+y} f(i) + f((x+1)(y+1))`.
pub fn verify_block_split<F: Fn(u64) -> Nat>(x: u64, y: u64, f: F) -> bool {
    let top = (x + 1) * (y + 1);
    sigma(0, top as i64, &f) == sigma(0, (x * (y + 1) + y) as i64, &f) + f(top)
}

/// `sum_{i=0}^{x(y+1)+y} f(i) = sum_{i=0}^{x} sum_{j=0}^{y} f(i (y + 1) + j)`.
pub fn verify_double_reindex<F: Fn(u64) -> Nat>(x: u64, y: u64, f: F) -> bool {
    let flat = sigma(0, (x * (y + 1) + y) as i64, &f);
    let nested = sigma(0, x as i64, |i| sigma(0, y as i64, |j| f(i * (y + 1) + j)));
    flat == nested
}

/// `sum_{j=0}^{k} floor((i (k + 1) + j) / (k + 1)) = sum_{j=0}^{k} i`.
pub fn verify_hint(i: u64, k: u64) -> bool {
    let lhs = sigma(0, k as i64, |j| Nat::from((i * (k + 1) + j) / (k + 1)));
    lhs == sigma(0, k as i64, |_| Nat::from(i))
}
