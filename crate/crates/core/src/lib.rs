//! Moessner's process and the nested sums behind it.
//!
//! Start from the ones, strike out every `(n+1)`-st element, take prefix
//! sums, strike out every `n`-th, and so on down to every second: the
//! result is `1^n, 2^n, 3^n, ...`. The same values come out of nested
//! summations whose inner bounds depend on the outer indices, and
//! varying those bounds yields factorials, binomials, Catalan, Fibonacci
//! and Euler zigzag numbers, all by additions alone.
//!
//! - [`numeric`]: big integers, sums, differences, counted arithmetic
//! - [`elision`]: which positions survive a strike-out
//! - [`engine`]: nested-sum programs and their evaluators
//! - [`presets`]: the catalog of named programs
//! - [`oracles`]: closed forms and recurrences for checking
//! - [`process`]: the row-by-row process and dynamic-programming powers
//! - [`inverse`]: undoing the process
//! - [`polygonal`]: polygonal numbers as sums of quotients
//! - [`oeis`]: b-file fixtures and prefix checks
//! - [`cli`]: the `moessner` command

pub mod cli;
pub mod elision;
pub mod engine;
pub mod inverse;
pub mod numeric;
pub mod oeis;
pub mod oracles;
pub mod polygonal;
pub mod presets;
pub mod process;

pub use numeric::{Nat, SInt};
