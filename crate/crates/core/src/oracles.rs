//! Closed forms and recurrences used as ground truth for the presets.
//!
//! Nothing here touches the summation engine or the process module.
//! Multiplication and division are used freely; every closed form with a
//! quotient checks that the division is exact.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numeric::Nat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what}: {numerator} is not divisible by {denominator}")]
    InexactDivision {
        what: &'static str,
        numerator: Nat,
        denominator: Nat,
    },
}

fn exact_div(what: &'static str, numerator: Nat, denominator: Nat) -> Result<Nat, OracleError> {
    let (q, r) = numerator.div_rem(&denominator);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(OracleError::InexactDivision {
            what,
            numerator,
            denominator,
        })
    }
}

/// `b^n` by square-and-multiply.
pub fn pow_fast(b: &Nat, mut n: u64) -> Nat {
    let mut base = b.clone();
    let mut acc = Nat::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

pub fn pow_u64(b: u64, n: u64) -> Nat {
    pow_fast(&Nat::from(b), n)
}

pub fn factorial(n: u64) -> Nat {
    (1..=n).fold(Nat::one(), |acc, k| acc * k)
}

/// `prod_{i=0}^{n} (step * i + 1)`: for step 1 this is `(n + 1)!`, for
/// step 2 the double factorial of odd numbers `1 * 3 * 5 * ...`, and so on.
pub fn multifactorial(step: u64, n: u64) -> Nat {
    (0..=n).fold(Nat::one(), |acc, i| acc * (Nat::from(step) * i + 1u32))
}

/// Pascal row `r` as a vector of `r + 1` coefficients.
pub fn pascal_row(r: u64) -> Vec<Nat> {
    let mut row = vec![Nat::one()];
    for _ in 0..r {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(Nat::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(Nat::one());
        row = next;
    }
    row
}

/// `C(n, k)` read off Pascal's triangle; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Nat {
    if k > n {
        return Nat::zero();
    }
    // Only the left half of each row is needed.
    let k = k.min(n - k) as usize;
    let mut row = vec![Nat::one()];
    for r in 1..=n as usize {
        let width = row.len().min(k) + 1;
        let mut next = Vec::with_capacity(width);
        next.push(Nat::one());
        for c in 1..width {
            let right = if c < row.len() { row[c].clone() } else { Nat::zero() };
            let v = &row[c - 1] + right;
            next.push(if c == r { Nat::one() } else { v });
        }
        row = next;
    }
    row[k].clone()
}

/// `C(n, k)` by the multiplicative formula, as a second route.
pub fn binomial_multiplicative(n: u64, k: u64) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let k = k.min(n - k);
    let mut acc = Nat::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Catalan numbers by `C_{n+1} = 2 (2n + 1) C_n / (n + 2)`.
pub fn catalan(n: u64) -> Nat {
    let mut c = Nat::one();
    for m in 0..n {
        let num = c * (2 * (2 * m + 1));
        c = exact_div("catalan recurrence", num, Nat::from(m + 2))
            .expect("the Catalan recurrence divides exactly");
    }
    c
}

/// `C(2n, n) / (n + 1)`.
pub fn catalan_closed(n: u64) -> Result<Nat, OracleError> {
    exact_div("catalan closed form", binomial(2 * n, n), Nat::from(n + 1))
}

/// The `(x + 1)`-fold convolution of the Catalan numbers,
/// `(x + 1) C(2n + x, n) / (n + x + 1)`.
pub fn catalan_convolved(x: u64, n: u64) -> Result<Nat, OracleError> {
    raney(1, x, n)
}

/// `(x + 1) C((s + 1) n + x, n) / (s n + x + 1)`: the value of the nested
/// sums with outer bound `x` and inner bounds `previous + s`. `s = 0` gives
/// binomial coefficients, `s = 1` convolved Catalan numbers, `s = 3` with
/// `x = 0` the quaternary tree numbers.
pub fn raney(s: u64, x: u64, n: u64) -> Result<Nat, OracleError> {
    let num = Nat::from(x + 1) * binomial((s + 1) * n + x, n);
    exact_div("raney closed form", num, Nat::from(s * n + x + 1))
}

/// Fibonacci numbers by iterating pairs `(F_k, F_{k+1})`.
pub fn fibonacci(n: u64) -> Nat {
    let mut pair = (Nat::zero(), Nat::one());
    for _ in 0..n {
        let next = &pair.0 + &pair.1;
        pair = (pair.1, next);
    }
    pair.0
}

/// Entringer triangle rows `0..=n`; `E(m, m)` is the `m`-th zigzag number.
pub fn entringer_rows(n: u64) -> Vec<Vec<Nat>> {
    let mut rows: Vec<Vec<Nat>> = vec![vec![Nat::one()]];
    for m in 1..=n as usize {
        let prev = &rows[m - 1];
        let mut row = vec![Nat::zero()];
        for k in 1..=m {
            let v = &row[k - 1] + &prev[m - k];
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

/// Euler zigzag (up/down) numbers, boustrophedon style.
pub fn euler_zigzag(n: u64) -> Nat {
    let rows = entringer_rows(n);
    rows[n as usize][n as usize].clone()
}

/// Multiset coefficient `C(x + n - 1, n)`; one for `n = 0`.
pub fn multiset(x: u64, n: u64) -> Nat {
    if n == 0 {
        return Nat::one();
    }
    if x == 0 {
        return Nat::zero();
    }
    binomial(x + n - 1, n)
}

/// `a (x + 1)^n`.
pub fn long1_closed(x: u64, n: u64, a: &Nat) -> Nat {
    a * pow_u64(x + 1, n)
}

/// `(a + d x) (x + 1)^n`.
pub fn long2_closed(x: u64, n: u64, a: &Nat, d: &Nat) -> Nat {
    (a + d * x) * pow_u64(x + 1, n)
}

/// `prod_{i=0}^{n} f(i)`.
pub fn product_table(f: &[Nat], n: u64) -> Nat {
    f.iter().take(n as usize + 1).fold(Nat::one(), |acc, v| acc * v)
}

/// `k n (n + 1) / 2 + n + 1`, the `(k + 2)`-gonal number `sum_{i=0}^{n} (k i + 1)`.
pub fn polygonal_closed(k: u64, n: u64) -> Result<Nat, OracleError> {
    let tri = exact_div(
        "triangular number",
        Nat::from(n) * (n + 1),
        Nat::from(2u32),
    )?;
    Ok(tri * k + n + 1u32)
}

/// A002449, types of binary trees of height `m - 1`, by the recurrence
/// `T(0, j) = 1`, `T(k, j) = sum_{i=0}^{2j+1} T(k - 1, i)`, with
/// `a(0) = a(1) = 1` and `a(m) = T(m - 1, 0)`.
pub fn a002449_rec(m: u64) -> Nat {
    tree_types(2, m)
}

/// The `b`-branching variant: `T(k, j) = sum_{i=0}^{b j + 1} T(k - 1, i)`
/// and `a(m) = sum_{i=0}^{b - 1} T(m - 2, i)` for `m >= 2`. For `b = 2` this
/// is the same as taking `T(m - 1, 0)`.
pub fn tree_types(b: u64, m: u64) -> Nat {
    if m < 2 {
        return Nat::one();
    }
    let height = (m - 2) as usize;
    // widest index needed at each height, from the top down
    let mut widths = vec![0u64; height + 1];
    widths[height] = b - 1;
    for k in (0..height).rev() {
        widths[k] = b * widths[k + 1] + 1;
    }
    let mut row: Vec<Nat> = vec![Nat::one(); widths[0] as usize + 1];
    for width in widths.iter().skip(1) {
        let mut prefix = Vec::with_capacity(row.len() + 1);
        let mut acc = Nat::zero();
        prefix.push(acc.clone());
        for v in &row {
            acc += v;
            prefix.push(acc.clone());
        }
        row = (0..=*width)
            .map(|j| prefix[(b * j + 2) as usize].clone())
            .collect();
    }
    row.iter().take(b as usize).sum()
}

/// Partitions of integers into parts taken from `parts`, counted by the
/// coin-change table. Used to build Fibonacci-part checks.
pub fn restricted_partitions(total: usize, parts: &[usize]) -> Nat {
    let mut ways = vec![Nat::zero(); total + 1];
    ways[0] = Nat::one();
    for &p in parts {
        for s in p..=total {
            let add = ways[s - p].clone();
            ways[s] += add;
        }
    }
    ways[total].clone()
}

/// The original list-based process: start from `init(0), init(1), ...`,
/// then for each period in `periods` strike out every period-th element
/// and take prefix sums. Returns the `x`-th element of the result.
pub fn sieve_process<F>(init: F, periods: &[u64], x: usize) -> Nat
where
    F: Fn(u64) -> Nat,
{
    let mut len = x + 1;
    for &p in periods.iter().rev() {
        // survivors needed `len` -> original length
        let p = p as usize;
        len = len + (len - 1) / (p - 1) + 1;
    }
    let mut list: Vec<Nat> = (0..len as u64).map(&init).collect();
    for &p in periods {
        let p = p as usize;
        let mut acc = Nat::zero();
        let mut next = Vec::with_capacity(list.len());
        for (i, v) in list.into_iter().enumerate() {
            if i % p == p - 1 {
                continue;
            }
            acc += v;
            next.push(acc.clone());
        }
        list = next;
    }
    list[x].clone()
}
