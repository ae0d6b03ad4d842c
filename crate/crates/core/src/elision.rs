//! Elision: which positions survive a periodic strike-out, where the
//! survivors came from, and the staircase/splice maps that undo it.
//!
//! Period parameter `j >= 1` means every `(j + 1)`-st element is struck out,
//! i.e. the positions `x` with `x mod (j + 1) = j`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElisionError {
    #[error("period parameter j must be at least 1 (got 0)")]
    ZeroPeriod,
}

fn check(j: u64) -> Result<(), ElisionError> {
    if j == 0 {
        Err(ElisionError::ZeroPeriod)
    } else {
        Ok(())
    }
}

/// The elision function: position in the original stream of the `x`-th
/// survivor, `floor((j + 1) * x / j)`.
pub fn keep_index(j: u64, x: u64) -> Result<u64, ElisionError> {
    check(j)?;
    Ok(x + x / j)
}

/// Complement of [`keep_index`]: position of the `x`-th struck-out element.
pub fn drop_index(j: u64, x: u64) -> Result<u64, ElisionError> {
    check(j)?;
    Ok((j + 1) * x + j)
}

/// Whether position `x` is struck out under period `j + 1`.
pub fn is_dropped(j: u64, x: u64) -> bool {
    x % (j + 1) == j
}

/// Staircase map: `None` on struck-out positions, `j * floor(x / (j + 1))`
/// elsewhere.
pub fn stair(j: u64, x: u64) -> Option<u64> {
    if is_dropped(j, x) {
        None
    } else {
        Some(j * (x / (j + 1)))
    }
}

/// Splice map: the staircase with each stair turned into a run of
/// consecutive numbers. Skipping the `None`s enumerates `0, 1, 2, ...`, so
/// it is a left inverse of [`keep_index`].
pub fn splice_index(j: u64, x: u64) -> Option<u64> {
    if is_dropped(j, x) {
        None
    } else {
        Some(j * (x / (j + 1)) + x % (j + 1))
    }
}
