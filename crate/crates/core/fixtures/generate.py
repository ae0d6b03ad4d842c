#!/usr/bin/env python3
"""Regenerates the bundled b-files.

Each sequence is computed from its standard definition with plain Python
integers. Run from this directory: python3 generate.py
"""
from functools import lru_cache
from math import comb, factorial
from pathlib import Path

HERE = Path(__file__).resolve().parent


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def zigzag(count):
    # boustrophedon (Seidel) triangle
    out, row = [1], [1]
    for n in range(1, count):
        nxt = [0]
        for v in reversed(row):
            nxt.append(nxt[-1] + v)
        row = nxt
        out.append(row[-1])
    return out


def double_factorial_odd(n):
    p = 1
    for i in range(1, 2 * n, 2):
        p *= i
    return p


def tree_types(m):
    # binary-tree height types: T(k, j) = sum_{i=0}^{2j+1} T(k-1, i)
    if m < 2:
        return 1

    @lru_cache(maxsize=None)
    def t(k, j):
        if k == 0:
            return 1
        return sum(t(k - 1, i) for i in range(2 * j + 2))

    return t(m - 2, 0) + t(m - 2, 1)


def history_table(n, x):
    # sum_{i1=0}^{x} sum_{i2=0}^{x+i1} ... 1 with n levels
    @lru_cache(maxsize=None)
    def go(rem, s):
        if rem == 0:
            return 1
        return sum(go(rem - 1, s + i) for i in range(s + 1))

    return go(n, x)


def fibonacci_bounds(n):
    # bounds 0, 1, then i_{k-2} + i_{k-1}
    @lru_cache(maxsize=None)
    def go(k, a, b):
        if k > n:
            return 1
        bound = 0 if k == 1 else 1 if k == 2 else a + b
        return sum(go(k + 1, b, i) for i in range(bound + 1))

    return go(1, 0, 0)


def seq(offset, count, f):
    return [(i, f(i)) for i in range(offset, offset + count)]


SEQUENCES = {
    "A000045": seq(0, 101, fib),
    "A000079": seq(0, 101, lambda n: 2**n),
    "A000108": seq(0, 101, lambda n: comb(2 * n, n) // (n + 1)),
    "A000111": list(enumerate(zigzag(61))),
    "A000142": seq(0, 61, factorial),
    "A000217": seq(0, 201, lambda n: n * (n + 1) // 2),
    "A000244": seq(0, 101, lambda n: 3**n),
    "A000245": seq(0, 61, lambda n: 3 * comb(2 * n, n - 1) // (n + 2) if n else 0),
    "A000290": seq(0, 201, lambda n: n * n),
    "A000326": seq(0, 201, lambda n: n * (3 * n - 1) // 2),
    "A000344": seq(2, 59, lambda n: 5 * comb(2 * n, n - 2) // (n + 3)),
    "A000384": seq(0, 201, lambda n: n * (2 * n - 1)),
    "A000578": seq(0, 201, lambda n: n**3),
    "A000583": seq(0, 201, lambda n: n**4),
    "A001147": seq(0, 61, double_factorial_odd),
    "A002057": seq(0, 61, lambda n: 4 * comb(2 * n + 3, n) // (n + 4)),
    "A002293": seq(0, 61, lambda n: comb(4 * n, n) // (3 * n + 1)),
    "A002449": seq(0, 13, tree_types),
    "A003517": seq(2, 59, lambda n: 6 * comb(2 * n + 1, n - 2) // (n + 4)),
    # by antidiagonals d = n + x, column x increasing within each
    "A125860": list(
        enumerate(history_table(d - x, x) for d in range(12) for x in range(d + 1))
    ),
    "A137273": seq(0, 16, fibonacci_bounds),
}


def main():
    for a, rows in SEQUENCES.items():
        path = HERE / f"b{a[1:]}.txt"
        path.write_text("".join(f"{i} {v}\n" for i, v in rows))


if __name__ == "__main__":
    main()
