"""Numeric checks of the excluded-order results for maxdet submatrices of Hadamard matrices.

A maxdet submatrix of order ``m = x n`` of a Hadamard matrix of order ``n``
must satisfy ``f(x) <= 2 ln(n/4) / n`` with

    f(x) = x ln x - (1 - x) ln(1 - x)   on (0, 1),   0 at the endpoints.

``f`` is positive and concave on (1/2, 1), so once the right-hand side drops
below ``max f`` there is an interval ``(x0, x1)`` of forbidden ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import CapacityError
from .tables import MAXDET

TOL = 1e-9  # slack for log-space comparisons
BISECT_TOL = 1e-12


def f(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"f is defined on [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return x * math.log(x) - (1.0 - x) * math.log1p(-x)


def f_prime(x: float) -> float:
    if not 0.0 < x < 1.0:
        raise ValueError(f"f' is defined on (0, 1), got {x}")
    return 2.0 + math.log(x) + math.log1p(-x)


def x_max() -> float:
    """The unique zero of f' in (1/2, 1)."""
    return (1.0 + math.sqrt(1.0 - 4.0 / math.e**2)) / 2.0


def z_max() -> float:
    return math.sqrt(1.0 - 4.0 / math.e**2)


def epsilon(z: float) -> float:
    """2 - ln((1+z)/(1-z))/z - ln(1-z^2), for 0 < z < 1."""
    if not 0.0 < z < 1.0:
        raise ValueError(f"epsilon is defined on (0, 1), got {z}")
    return 2.0 - (math.log1p(z) - math.log1p(-z)) / z - math.log1p(-z * z)


def epsilon_series(z: float, tol: float = 1e-18) -> float:
    """Power series sum_k z^(2k) / (k (2k + 1)) of :func:`epsilon`."""
    if not 0.0 <= z < 1.0:
        raise ValueError(f"series converges on [0, 1), got {z}")
    z2 = z * z
    total = 0.0
    p = 1.0
    k = 1
    while True:
        p *= z2
        term = p / (k * (2 * k + 1))
        total += term
        if term < tol:
            return total
        k += 1


def threshold(n: int) -> float:
    return 2.0 * math.log(n / 4.0) / n


@dataclass(frozen=True)
class ExcludedInterval:
    n: int
    x0: float
    x1: float
    empty: bool

    def orders(self) -> tuple[int, int] | None:
        """Integer orders m with x0 < m/n < x1, as (first, last), or None."""
        if self.empty:
            return None
        lo = math.floor(self.n * self.x0) + 1
        hi = math.ceil(self.n * self.x1) - 1
        return (lo, hi) if lo <= hi else None


def _bisect(g, a: float, b: float) -> float:
    # g(a) and g(b) have opposite signs
    ga = g(a)
    while b - a > BISECT_TOL:
        c = 0.5 * (a + b)
        gc = g(c)
        if (gc > 0) == (ga > 0):
            a, ga = c, gc
        else:
            b = c
    return 0.5 * (a + b)


def excluded_interval(n: int) -> ExcludedInterval:
    if n < 4:
        raise ValueError("excluded interval needs n >= 4")
    t = threshold(n)
    xm = x_max()
    if t >= f(xm):
        return ExcludedInterval(n, xm, xm, True)
    g = lambda x: f(x) - t  # noqa: E731
    return ExcludedInterval(n, _bisect(g, 0.5, xm), _bisect(g, xm, 1.0), False)


def depth3_inequality_holds(n: int) -> bool:
    """The depth d = 3 condition ((n-3)/n)^(n-3) <= 27/(16n); exact for small n, log space beyond."""
    if n < 4:
        raise ValueError("need n >= 4")
    if n <= 400:
        return 16 * n * (n - 3) ** (n - 3) <= 27 * n ** (n - 3)
    lhs = (n - 3) * math.log1p(-3.0 / n)
    return lhs <= math.log(27.0 / (16.0 * n)) + TOL


def lowerbound_D(m: int) -> float:
    """4 m^(m/2 - 1), a lower bound on D(m) for orders m >= 4 where Hadamard matrices exist."""
    return 4.0 * m ** (m / 2.0 - 1.0)


def complementary_bound(n: int, m: int, maxdet=MAXDET) -> Union[int, float]:
    """n^(m - n/2) D(n - m); an exact integer when n is even."""
    if not (n <= 2 * m and m <= n):
        raise ValueError("need n/2 <= m <= n")
    d = n - m
    if d and d not in maxdet:
        raise CapacityError(f"D({d}) not tabulated")
    D = maxdet[d] if d else 1
    if n % 2 == 0:
        return n ** (m - n // 2) * D
    return n ** (m - n / 2) * D


class PrimeGapTable:
    """Sieve of Eratosthenes with lookups of the prime gap function.

    ``gap(x)`` is the largest ``p' - p`` over consecutive primes ``p < p'``
    with ``p <= x``; the next prime after ``x`` may exceed ``x``.
    """

    def __init__(self, limit: int):
        if limit < 4:
            raise ValueError("sieve limit must be >= 4")
        s = np.ones(limit + 1, dtype=bool)
        s[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if s[p]:
                s[p * p::p] = False
        self.limit = limit
        self.primes = np.flatnonzero(s)
        gaps = np.diff(self.primes)
        self._running = np.maximum.accumulate(gaps) if gaps.size else gaps

    def gap(self, x: float) -> int:
        i = int(np.searchsorted(self.primes, math.floor(x), side="right")) - 1  # last prime <= x
        if i < 0:
            return 0
        if i + 1 >= self.primes.size:
            raise CapacityError(f"sieve limit {self.limit} too small for lambda({x})")
        return int(self._running[i])


@lru_cache(maxsize=8)
def _table(limit: int) -> PrimeGapTable:
    return PrimeGapTable(limit)


def lambda_prime_gap(x: float) -> int:
    # Bertrand: a prime lies in (x, 2x], so sieving to 2x + 2 suffices
    limit = 1 << max(6, math.ceil(math.log2(2 * x + 2)))
    return _table(limit).gap(x)


def prime_gap_inequality(n: int, m: int) -> bool:
    """m^(m/2) (4/(n e))^(lambda(n/2)/2) <= n^(m - n/2) d^(d/2), with d = n - m, in log space."""
    if n < 4 or not 1 <= m <= n:
        raise ValueError("need n >= 4 and 1 <= m <= n")
    d = n - m
    lam = lambda_prime_gap(n / 2)
    lhs = 0.5 * m * math.log(m) + 0.5 * lam * math.log(4.0 / (n * math.e))
    rhs = (m - n / 2) * math.log(n) + (0.5 * d * math.log(d) if d else 0.0)
    return lhs <= rhs + TOL


@dataclass(frozen=True)
class BoundsReport:
    n: int
    threshold: float
    f_max: float
    interval: ExcludedInterval
    excluded_orders: tuple[int, int] | None
    lower_limit: float  # n/2 + 5 ln n
    upper_limit: int  # n - 2
    depth3: bool

    def lines(self) -> list[str]:
        iv = self.interval
        out = [
            f"n = {self.n}",
            f"threshold 2ln(n/4)/n = {self.threshold:.12f}",
            f"f(x_max) = {self.f_max:.12f}",
        ]
        if iv.empty:
            out.append("interval empty")
        else:
            out.append(f"x0 = {iv.x0:.12f}")
            out.append(f"x1 = {iv.x1:.12f}")
            if self.excluded_orders is None:
                out.append("excluded orders: none")
            else:
                out.append(f"excluded orders: {self.excluded_orders[0]}..{self.excluded_orders[1]}")
        out.append(f"n/2 + 5 ln n = {self.lower_limit:.6f}")
        out.append(f"n - 2 = {self.upper_limit}")
        out.append(f"((n-3)/n)^(n-3) <= 27/(16n): {'holds' if self.depth3 else 'fails'}")
        return out


def bounds_report(n: int) -> BoundsReport:
    iv = excluded_interval(n)
    return BoundsReport(n, threshold(n), f(x_max()), iv, iv.orders(), n / 2 + 5 * math.log(n), n - 2,
                        depth3_inequality_holds(n))
