"""Exhaustive enumeration of all minors of a ±1 matrix.

Two engines produce the same :class:`MinorProfile`:

* ``alg="A"`` evaluates every ``m x m`` submatrix independently by Gaussian
  elimination in floating point, rounding the scaled result.
* ``alg="D"`` fixes a set of ``m`` rows and builds the minors of the last
  ``j`` of those rows on every ``j``-subset of columns, level by level, by
  Laplace expansion along the newly added (topmost) row.  Level ``j`` is
  indexed by the colex rank of the column subset.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import kernels
from .combinatorics import binomial_table, colex_unrank, level_tables, split_range
from .errors import CapacityError, RoundingHazardError
from .matrix import EXACT_MAX_ORDER, FLOAT_MAX_ORDER, SignMatrix

DEFAULT_MEMORY_CAP = 1 << 30  # bytes for the two level arrays of one worker

ProgressFn = Callable[[int, int, int], None]  # (m, row sets done, row sets total)
BlockFn = Callable[[int, int, np.ndarray], None]  # (m, first row-set rank, signed dets)


@dataclass
class MinorProfile:
    """Per-order histogram of normalized minors plus the sum of squared raw minors."""

    n: int
    counts: dict[int, dict[int, int]] = field(default_factory=dict)
    sum_squares: dict[int, int] = field(default_factory=dict)

    @property
    def orders(self) -> list[int]:
        return sorted(self.counts)

    def values(self, m: int) -> list[int]:
        return sorted(self.counts[m])

    def total(self, m: int) -> int:
        return sum(self.counts[m].values())

    def max_value(self, m: int) -> int:
        return max(self.counts[m])

    def zeros(self, m: int) -> int:
        return self.counts[m].get(0, 0)

    def is_complete(self) -> bool:
        return set(self.counts) == set(range(1, self.n + 1))

    def to_dict(self) -> dict:
        return {
            "order": self.n,
            "per_order": [
                {
                    "m": m,
                    "values": [[v, self.counts[m][v]] for v in self.values(m)],
                    "sum_squares": self.sum_squares[m],
                }
                for m in self.orders
            ],
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "MinorProfile":
        p = cls(int(d["order"]))
        for row in d["per_order"]:
            m = int(row["m"])
            p.counts[m] = {int(v): int(c) for v, c in row["values"]}
            p.sum_squares[m] = int(row["sum_squares"])
        return p

    @classmethod
    def from_json(cls, text: str) -> "MinorProfile":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "normalized", "multiplicity"])
        for m in self.orders:
            for v in self.values(m):
                w.writerow([m, v, self.counts[m][v]])
        return buf.getvalue()


def merge_profiles(parts: Iterable[MinorProfile]) -> MinorProfile:
    """Add multiplicities and sums of squares of profiles of the same matrix."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    n = parts[0].n
    out = MinorProfile(n)
    for p in parts:
        if p.n != n:
            raise ValueError(f"cannot merge profiles of orders {n} and {p.n}")
        for m, hist in p.counts.items():
            dst = out.counts.setdefault(m, {})
            for v, c in hist.items():
                dst[v] = dst.get(v, 0) + c
            out.sum_squares[m] = out.sum_squares.get(m, 0) + p.sum_squares[m]
    out.counts = {m: dict(sorted(out.counts[m].items())) for m in sorted(out.counts)}
    out.sum_squares = {m: out.sum_squares[m] for m in sorted(out.sum_squares)}
    return out


def _check_orders(n: int, orders) -> list[int]:
    if orders is None:
        return list(range(1, n + 1))
    ms = sorted(set(int(m) for m in orders))
    bad = [m for m in ms if not 1 <= m <= n]
    if bad:
        raise ValueError(f"minor orders {bad} outside 1..{n}")
    return ms


def _part(n: int, m: int, keys, counts, lo, hi) -> MinorProfile:
    sq = (int(hi) << 64) | int(lo)
    hist = {int(k): int(c) for k, c in zip(keys, counts)}
    return MinorProfile(n, {m: hist}, {m: sq << (2 * (m - 1))})


def _chunks(total: int, workers: int) -> list[tuple[int, int]]:
    # several chunks per worker so progress reports are meaningful
    return [c for c in split_range(total, max(1, workers * 8)) if c[0] < c[1]]


def _run(tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield t()
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(lambda t: t(), tasks)


def level_memory(n: int, k: int) -> int:
    """Bytes held by the two level arrays when enumerating order-k minors."""
    return 2 * 8 * max([n] + [math.comb(n, j) for j in range(1, k + 1)])


def enumerate_minors_algD(
    A: SignMatrix,
    orders=None,
    workers: int = 1,
    on_minors: Optional[BlockFn] = None,
    progress: Optional[ProgressFn] = None,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> MinorProfile:
    """Profile of all minors of the requested orders via level-array Laplace expansion.

    ``on_minors`` receives, for each contiguous chunk of row subsets, the
    order ``m``, the colex rank of the chunk's first row subset, and an
    array of signed determinants indexed ``[row subset, column subset rank]``.
    """
    n = A.n
    ms = _check_orders(n, orders)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if max(ms) > EXACT_MAX_ORDER:
        raise CapacityError(f"minors of order > {EXACT_MAX_ORDER} may overflow 64-bit integers")
    need = level_memory(n, max(ms)) * workers
    if need > memory_cap:
        raise CapacityError(f"level arrays need {need} bytes, cap is {memory_cap}")
    a = np.ascontiguousarray(A.entries, dtype=np.int64)
    elems, childs, offsets = level_tables(n)
    binom = binomial_table(n)
    parts = []
    for m in ms:
        total = math.comb(n, m)
        chunks = _chunks(total, workers)
        done = 0
        if on_minors is None:
            def task(lo, hi, m=m):
                keys, counts, sq_lo, sq_hi = kernels.algd_histogram(a, m, lo, hi, elems, childs, offsets, binom)
                return hi - lo, _part(n, m, keys, counts, sq_lo, sq_hi)
        else:
            def task(lo, hi, m=m):
                block = kernels.algd_block(a, m, lo, hi, elems, childs, offsets, binom)
                on_minors(m, lo, block)
                vals = np.abs(block).ravel() >> (m - 1)
                keys, counts = np.unique(vals, return_counts=True)
                sq = sum(int(k) * int(k) * int(c) for k, c in zip(keys, counts))
                return hi - lo, _part(n, m, keys, counts, sq & (2**64 - 1), sq >> 64)
        for size, part in _run([lambda lo=lo, hi=hi: task(lo, hi) for lo, hi in chunks], workers):
            parts.append(part)
            done += size
            if progress is not None:
                progress(m, done, total)
    return merge_profiles(parts) if parts else MinorProfile(n)


def enumerate_minors_algA(
    A: SignMatrix,
    orders=None,
    workers: int = 1,
    progress: Optional[ProgressFn] = None,
) -> MinorProfile:
    """Profile of all minors of the requested orders by per-submatrix elimination."""
    n = A.n
    if n > FLOAT_MAX_ORDER:
        raise CapacityError(f"Algorithm A supports order <= {FLOAT_MAX_ORDER}, got {n}")
    ms = _check_orders(n, orders)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    a = np.ascontiguousarray(A.entries, dtype=np.int64)
    binom = binomial_table(n)
    parts = []
    for m in ms:
        total = math.comb(n, m)
        done = 0

        def task(lo, hi, m=m):
            res = kernels.alga_histogram(a, m, lo, hi, binom)
            keys, counts, sq_lo, sq_hi, bad_row, bad_col, bad_x = res
            if bad_row >= 0:
                rows = colex_unrank(int(bad_row), m, n)
                cols = colex_unrank(int(bad_col), m, n)
                raise RoundingHazardError(
                    f"order-{m} minor at rows {rows}, cols {cols}: scaled value {bad_x!r} not near an integer"
                )
            return hi - lo, _part(n, m, keys, counts, sq_lo, sq_hi)

        for size, part in _run([lambda lo=lo, hi=hi: task(lo, hi) for lo, hi in _chunks(total, workers)], workers):
            parts.append(part)
            done += size
            if progress is not None:
                progress(m, done, total)
    return merge_profiles(parts) if parts else MinorProfile(n)


def enumerate_minors(A: SignMatrix, orders=None, alg: str = "D", **kw) -> MinorProfile:
    if alg.upper() == "A":
        return enumerate_minors_algA(A, orders, workers=kw.get("workers", 1), progress=kw.get("progress"))
    if alg.upper() == "D":
        return enumerate_minors_algD(A, orders, **kw)
    raise ValueError(f"unknown algorithm {alg!r}")


def minor_table(A: SignMatrix, m: int) -> np.ndarray:
    """Signed order-m minors as a ``C(n,m) x C(n,m)`` array indexed by colex ranks."""
    n = A.n
    if not 1 <= m <= min(n, EXACT_MAX_ORDER):
        raise ValueError(f"order {m} outside 1..{n}")
    a = np.ascontiguousarray(A.entries, dtype=np.int64)
    elems, childs, offsets = level_tables(n)
    return kernels.algd_block(a, m, 0, math.comb(n, m), elems, childs, offsets, binomial_table(n))
