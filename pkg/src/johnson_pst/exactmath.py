"""Exact integer helpers: binomials with the vanishing convention, base-p
digit sums, carry-counting prime valuations, and digitwise binomial residues.

Integers are plain Python ints (arbitrary precision), rationals are
``fractions.Fraction``; everything here is pure and thread-safe.
"""

from __future__ import annotations

import math
from typing import Iterable


def is_prime(p: int) -> bool:
    """Deterministic trial-division check; meant for small moduli."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")


def binom(a: int, b: int) -> int:
    """C(a, b), with C(a, b) = 0 whenever b < 0 or b > a.

    Negative a is rejected: no generalized binomials are needed anywhere,
    and the vanishing convention keeps binomial sums writable without
    range guards.
    """
    if a < 0:
        raise ValueError(f"binom requires a >= 0, got a={a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def digit_sum(n: int, p: int) -> int:
    """Sum of the base-p digits of n >= 0 (p prime)."""
    _require_prime(p)
    if n < 0:
        raise ValueError(f"digit_sum requires n >= 0, got n={n}")
    total = 0
    while n:
        n, digit = divmod(n, p)
        total += digit
    return total


def binom_valuation(a: int, b: int, p: int) -> int:
    """Exponent of the prime p in C(a, b), for 0 <= b <= a.

    Computed by carry counting: (s_p(b) + s_p(a-b) - s_p(a)) / (p-1),
    where s_p is the base-p digit sum.  Out-of-range b is an error, not
    +infinity: callers always guard.
    """
    if not 0 <= b <= a:
        raise ValueError(f"binom_valuation requires 0 <= b <= a, got a={a}, b={b}")
    _require_prime(p)
    return (digit_sum(b, p) + digit_sum(a - b, p) - digit_sum(a, p)) // (p - 1)


def binom_mod_p(a: int, b: int, p: int) -> int:
    """C(a, b) mod p via the product of digitwise binomials in base p."""
    if a < 0 or b < 0:
        raise ValueError(f"binom_mod_p requires a, b >= 0, got a={a}, b={b}")
    _require_prime(p)
    result = 1
    while a or b:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        if db > da:
            return 0
        result = result * math.comb(da, db) % p
    return result


def nu2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("nu2(0) is undefined")
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    """n with every factor of 2 removed; the sign is preserved."""
    if n == 0:
        raise ValueError("odd_part(0) is undefined")
    return n >> nu2(n)


def gcd_all(values: Iterable[int]) -> int:
    """gcd of any number of integers; 0 for an empty or all-zero input."""
    return math.gcd(*values)
