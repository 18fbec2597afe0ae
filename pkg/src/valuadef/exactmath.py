"""Exact integer and rational helpers used by the group and coefficient layers."""

from __future__ import annotations

import math
from fractions import Fraction


def is_square_free(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def surd_sign(a: Fraction | int, b: Fraction | int, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for rational a, b and square-free d >= 2.

    Mixed-sign inputs are settled by comparing a^2 with d*b^2; since sqrt(d)
    is irrational the two never tie for (a, b) != (0, 0).
    """
    if b == 0:
        return 0 if a == 0 else (1 if a > 0 else -1)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs, rhs = a * a, d * b * b
    if a > 0:
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


def int_nth_root(m: int, n: int) -> int:
    """Floor of the n-th root of m >= 0 (integer Newton iteration)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m in (0, 1) or n == 1:
        return m
    x = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def rational_nth_root(c: Fraction, n: int) -> Fraction | None:
    """Exact n-th root of a rational, or None if it does not exist in Q.

    For even n the non-negative root is returned; for odd n the sign of c
    carries over.
    """
    if c == 0:
        return Fraction(0)
    if c < 0:
        if n % 2 == 0:
            return None
        r = rational_nth_root(-c, n)
        return None if r is None else -r
    num, den = c.numerator, c.denominator
    rn = int_nth_root(num, n)
    if rn**n != num:
        return None
    rd = int_nth_root(den, n)
    if rd**n != den:
        return None
    return Fraction(rn, rd)


def pell_fundamental(d: int) -> tuple[int, int]:
    """Smallest x, y >= 1 with x^2 - d*y^2 = 1, via the continued fraction
    expansion of sqrt(d)."""
    a0 = math.isqrt(d)
    m, den, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - d * q * q != 1:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


def floor_quadratic(p: int, q: int, d: int, r: int) -> int:
    """Exact floor of (p + q*sqrt(d)) / r for integers p, q and r > 0."""
    if r <= 0:
        raise ValueError("denominator must be positive")
    if q == 0:
        return p // r
    t = math.isqrt(q * q * d)
    if q < 0:
        # q*sqrt(d) is irrational, so the floor is one below -isqrt
        t = -t - 1
    f = (p + t) // r
    while surd_sign(p - (f + 1) * r, q, d) >= 0:
        f += 1
    while surd_sign(p - f * r, q, d) < 0:
        f -= 1
    return f
