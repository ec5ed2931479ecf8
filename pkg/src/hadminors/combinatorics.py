"""Colexicographic ranking of fixed-size subsets.

A ``j``-subset ``s_0 < s_1 < ... < s_{j-1}`` of the nonnegative integers has
colex rank ``sum_i C(s_i, i + 1)``.  The rank does not depend on the size of
the ground set, so the subsets of ``range(n)`` are exactly the ranks
``0 .. C(n, j) - 1``.  Level arrays in the enumerators are indexed this way.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np


def colex_rank(subset: Iterable[int], n: int | None = None) -> int:
    """Rank of ``subset`` among subsets of the same size in colex order."""
    s = sorted(subset)
    if len(set(s)) != len(s):
        raise ValueError(f"subset has repeated elements: {s}")
    if s and s[0] < 0:
        raise ValueError(f"negative element in subset: {s}")
    if n is not None and s and s[-1] >= n:
        raise ValueError(f"element {s[-1]} outside range({n})")
    return sum(comb(x, i + 1) for i, x in enumerate(s))


def colex_unrank(rank: int, j: int, n: int | None = None) -> tuple[int, ...]:
    """Inverse of :func:`colex_rank` for subsets of size ``j``."""
    if rank < 0:
        raise ValueError(f"rank must be nonnegative, got {rank}")
    if n is not None and rank >= comb(n, j):
        raise ValueError(f"rank {rank} out of range for C({n}, {j}) = {comb(n, j)}")
    out = []
    r = rank
    for i in range(j, 0, -1):
        # largest x with C(x, i) <= r
        x = i - 1
        while comb(x + 1, i) <= r:
            x += 1
        out.append(x)
        r -= comb(x, i)
    return tuple(reversed(out))


def colex_subsets(n: int, j: int) -> Iterator[tuple[int, ...]]:
    """All ``j``-subsets of ``range(n)`` in colex order."""
    if j == 0:
        yield ()
        return
    if j > n:
        return
    s = list(range(j))
    while True:
        yield tuple(s)
        i = 0
        while i < j - 1 and s[i] + 1 == s[i + 1]:
            i += 1
        if i == j - 1 and s[i] + 1 == n:
            return
        s[i] += 1
        for t in range(i):
            s[t] = t


def complement(subset: Sequence[int], n: int) -> tuple[int, ...]:
    present = set(subset)
    return tuple(x for x in range(n) if x not in present)


@lru_cache(maxsize=None)
def binomial_table(n: int) -> np.ndarray:
    """``(n + 2, n + 2)`` int64 table of binomial coefficients."""
    t = np.zeros((n + 2, n + 2), dtype=np.int64)
    for a in range(n + 2):
        for b in range(a + 1):
            t[a, b] = comb(a, b)
    return t


@lru_cache(maxsize=None)
def subset_matrix(n: int, j: int) -> np.ndarray:
    """``(C(n, j), j)`` array whose row ``r`` is the subset of colex rank ``r``."""
    out = np.empty((comb(n, j), j), dtype=np.int32)
    for r, s in enumerate(colex_subsets(n, j)):
        out[r] = s
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def child_matrix(n: int, j: int) -> np.ndarray:
    """``(C(n, j), j)`` array: entry ``[r, p]`` is the rank of subset ``r``
    with its ``p``-th smallest element removed."""
    subs = subset_matrix(n, j).astype(np.int64)
    c = binomial_table(n)
    out = np.zeros((subs.shape[0], j), dtype=np.int64)
    if j == 0:
        return out.astype(np.int32)
    # elements before p keep position i -> C(s_i, i+1); after p shift to i-1 -> C(s_i, i)
    keep = c[subs, np.arange(1, j + 1)]
    shift = c[subs, np.arange(0, j)]
    pre = np.concatenate([np.zeros((subs.shape[0], 1), np.int64), np.cumsum(keep, axis=1)], axis=1)
    suf = np.concatenate([np.cumsum(shift[:, ::-1], axis=1)[:, ::-1], np.zeros((subs.shape[0], 1), np.int64)], axis=1)
    for p in range(j):
        out[:, p] = pre[:, p] + suf[:, p + 1]
    out = out.astype(np.int32)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def complement_ranks(n: int, j: int) -> np.ndarray:
    """Entry ``r`` is the colex rank of the complement of subset ``r`` in ``range(n)``."""
    subs = subset_matrix(n, j)
    mask = np.ones((subs.shape[0], n), dtype=bool)
    if j:
        np.put_along_axis(mask, subs.astype(np.int64), False, axis=1)
    c = binomial_table(n)
    # position of each remaining element within the complement
    pos = np.cumsum(mask, axis=1) - 1
    vals = np.where(mask, c[np.arange(n)[None, :], np.clip(pos + 1, 0, n + 1)], 0)
    out = vals.sum(axis=1).astype(np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def level_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flattened subset/child tables for all levels ``j = 1 .. n``.

    Level ``j`` occupies ``[offsets[j], offsets[j] + C(n, j) * j)`` of both
    flat arrays, row-major with ``j`` entries per subset.
    """
    offsets = np.zeros(n + 2, dtype=np.int64)
    for j in range(1, n + 1):
        offsets[j + 1] = offsets[j] + comb(n, j) * j
    elems = np.empty(offsets[n + 1], dtype=np.int32)
    childs = np.empty(offsets[n + 1], dtype=np.int32)
    for j in range(1, n + 1):
        elems[offsets[j]:offsets[j + 1]] = subset_matrix(n, j).ravel()
        childs[offsets[j]:offsets[j + 1]] = child_matrix(n, j).ravel()
    for a in (offsets, elems, childs):
        a.setflags(write=False)
    return elems, childs, offsets


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into at most ``parts`` contiguous, nonempty pieces."""
    parts = max(1, min(parts, total)) if total else 1
    bounds = [total * i // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
