"""Type A specializations for SL_n / mu_m.

Dominant weights of SL_n are written through exponents
``e_1 >= ... >= e_{n-1} >= 0`` (the character ``diag(t) -> prod t_i^{e_i}``);
in fundamental-weight coordinates ``c_i = e_i - e_{i+1}`` with ``e_n = 0``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import InvalidInput
from .rootsys import Weight


class NotApplicable(InvalidInput):
    """The 2-adic hypothesis does not hold for this weight."""


@dataclass(frozen=True)
class ExponentWeight:
    n: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput("n must be at least 2")
        e = tuple(int(x) for x in self.exponents)
        if len(e) != self.n - 1:
            raise InvalidInput(f"need {self.n - 1} exponents for n={self.n}, got {len(e)}")
        if any(x < 0 for x in e) or any(a < b for a, b in zip(e, e[1:])):
            raise InvalidInput(f"exponents must be non-increasing and nonnegative: {list(e)}")
        object.__setattr__(self, "exponents", e)

    @classmethod
    def from_weight(cls, weight: Sequence[int]) -> "ExponentWeight":
        w = Weight(weight)
        if not w.is_dominant:
            raise InvalidInput(f"weight {list(w)} is not dominant")
        e = [sum(w[i:]) for i in range(len(w))]
        return cls(len(w) + 1, tuple(e))

    def to_weight(self) -> Weight:
        e = self.exponents + (0,)
        return Weight(e[i] - e[i + 1] for i in range(self.n - 1))

    @cached_property
    def partition(self) -> tuple[tuple[int, int], ...]:
        """``(a_i, r_i)`` pairs with a_1 > ... > a_k = 0 and sum r_i = n."""
        counts = Counter(self.exponents + (0,))
        return tuple((a, counts[a]) for a in sorted(counts, reverse=True))


def orbit_index_typeA(w: ExponentWeight) -> int:
    n = w.n
    s1 = sum(r * a for a, r in w.partition)
    s2 = sum(r * a * a for a, r in w.partition)
    num = math.factorial(n - 2) * (n * s2 - s1 * s1)
    den = math.prod(math.factorial(r) for _, r in w.partition)
    if num % den:
        raise AssertionError(f"orbit index not integral for {w}")
    return num // den


def _check_divides(n: int, m: int) -> None:
    if m < 1 or n % m:
        raise InvalidInput(f"m={m} must divide n={n}")


def center_character(w: ExponentWeight, m: int) -> int:
    """Restriction to the centre, as ``sum e_i mod m``; zero iff it factors through SL_n/mu_m."""
    _check_divides(w.n, m)
    return sum(w.exponents) % m


def E_typeA(n: int, m: int) -> int:
    _check_divides(n, m)
    return m // math.gcd(m, n // m)


def ratio_prime_set_typeA(n: int, m: int) -> frozenset[int]:
    _check_divides(n, m)
    g = math.gcd(m, n // m)
    return prime_factors(2 * g if m % 2 == 0 else g)


def prime_factors(x: int) -> frozenset[int]:
    x = abs(x)
    out, p = set(), 2
    while p * p <= x:
        while x % p == 0:
            out.add(p)
            x //= p
        p += 1
    if x > 1:
        out.add(x)
    return frozenset(out)


def v2(x: int) -> float:
    """2-adic valuation; ``inf`` for zero."""
    if x == 0:
        return math.inf
    return (x & -x).bit_length() - 1


def s2(x: int) -> int:
    """Number of 1 bits in the binary expansion."""
    return bin(x).count("1")


@dataclass(frozen=True)
class P2Verdict:
    orbit_index: int
    v2_n: float
    v2_index: float
    holds: bool


def check_p2_claim(w: ExponentWeight) -> P2Verdict:
    """Check ``v2(N(W lambda)) > v2(n)`` under ``v2(sum r_i a_i) >= v2(n) > 0``."""
    vn = v2(w.n)
    total = sum(r * a for a, r in w.partition)
    if not (vn > 0 and v2(total) >= vn):
        raise NotApplicable(f"hypothesis fails for n={w.n}, exponents {list(w.exponents)}")
    idx = orbit_index_typeA(w)
    vi = v2(idx)
    return P2Verdict(idx, vn, vi, vi > vn)


def exponent_lists(n: int, max_exp: int):
    """All non-increasing exponent lists of length n-1 with entries <= max_exp."""

    def rec(prefix, remaining, cap):
        if remaining == 0:
            yield tuple(prefix)
            return
        for x in range(cap, -1, -1):
            yield from rec(prefix + [x], remaining - 1, x)

    yield from rec([], n - 1, max_exp)
