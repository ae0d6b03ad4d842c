//! Exact integer arithmetic, the summation combinator, differences and
//! antidifferences, and operation-counting arithmetic.
//!
//! Every sequence value in this crate is a [`Nat`]. Bounds and backward
//! differences may go negative and use [`SInt`].
//!
//! Counting follows one rule throughout: a tally is bumped once per binary
//! `+` actually performed. Summing `m >= 1` terms therefore costs `m - 1`
//! additions (the first term seeds the accumulator, nothing is ever added
//! to an initial zero), and an empty sum costs nothing.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

/// Arbitrary-precision non-negative integer.
pub type Nat = BigUint;

/// Arbitrary-precision signed integer.
pub type SInt = BigInt;

/// A value paired with the number of additions and multiplications that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CountingNat {
    pub value: Nat,
    pub additions: u64,
    pub multiplications: u64,
}

impl CountingNat {
    /// A value obtained for free (a literal, a table lookup).
    pub fn free(value: impl Into<Nat>) -> Self {
        CountingNat {
            value: value.into(),
            additions: 0,
            multiplications: 0,
        }
    }

    pub fn zero() -> Self {
        Self::free(0u32)
    }

    /// Adds `other` into `self`, charging one addition plus whatever
    /// `other` cost to compute.
    pub fn add_counted(&mut self, other: &CountingNat) {
        self.value += &other.value;
        self.additions += other.additions + 1;
        self.multiplications += other.multiplications;
    }
}

impl fmt::Display for CountingNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} additions, {} multiplications)",
            self.value, self.additions, self.multiplications
        )
    }
}

/// `sum_{i=lo}^{hi} term(i)`, zero when `hi < lo`.
pub fn sigma<F>(lo: u64, hi: i64, mut term: F) -> Nat
where
    F: FnMut(u64) -> Nat,
{
    let mut acc = Nat::zero();
    if hi < 0 || (hi as u64) < lo {
        return acc;
    }
    for i in lo..=hi as u64 {
        acc += term(i);
    }
    acc
}

/// Counting variant of [`sigma`]: `m` terms cost `m - 1` additions on top
/// of whatever each term reports.
pub fn sigma_counting<F>(lo: u64, hi: i64, mut term: F) -> CountingNat
where
    F: FnMut(u64) -> CountingNat,
{
    if hi < 0 || (hi as u64) < lo {
        return CountingNat::zero();
    }
    let mut acc = term(lo);
    for i in lo + 1..=hi as u64 {
        let t = term(i);
        acc.add_counted(&t);
    }
    acc
}

/// `f(0)` at zero, `f(i) - f(i - 1)` elsewhere.
pub fn backward_difference<F>(f: F, i: u64) -> SInt
where
    F: Fn(u64) -> Nat,
{
    let here = SInt::from(f(i));
    if i == 0 {
        here
    } else {
        here - SInt::from(f(i - 1))
    }
}

/// The antidifference of `f`: `x |-> sum_{i=0}^{x} f(i)`.
pub fn prefix_sum<F>(f: F) -> impl Fn(u64) -> Nat
where
    F: Fn(u64) -> Nat,
{
    move |x| sigma(0, x as i64, &f)
}

/// `x * c` by repeated halving of `x`, using additions only.
///
/// Implements the three clauses literally:
///
/// ```text
/// times 0           c = 0
/// times (2 (x + 1)) c = let m = times (x + 1) c in m + m
/// times (2 x + 1)   c = let m = times x c in (m + m) + c
/// ```
///
/// Each doubling is one shared addition `m + m`. Walking the bits of `x`
/// from the most significant end visits the same clauses in the same
/// order, including the `0 + 0` produced under the leading bit.
pub fn times_halving(x: &Nat, c: &Nat) -> CountingNat {
    let mut acc = CountingNat::zero();
    let bits = x.bits();
    for bit in (0..bits).rev() {
        let doubled = &acc.value + &acc.value;
        acc.value = doubled;
        acc.additions += 1;
        if x.bit(bit) {
            acc.value += c;
            acc.additions += 1;
        }
    }
    acc
}

/// Number of binary digits of `x` (zero has none).
pub fn bit_length(x: u64) -> u64 {
    (u64::BITS - x.leading_zeros()) as u64
}

/// Sums a sequence of counted terms under the usual convention.
pub fn sum_counted<I>(terms: I) -> CountingNat
where
    I: IntoIterator<Item = CountingNat>,
{
    let mut iter = terms.into_iter();
    let Some(mut acc) = iter.next() else {
        return CountingNat::zero();
    };
    for t in iter {
        acc.add_counted(&t);
    }
    acc
}

/// Serializes a big integer as a decimal string.
pub fn ser_decimal<S: serde::Serializer>(v: &Nat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
