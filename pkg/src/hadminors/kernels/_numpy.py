"""Vectorized numpy versions of the compiled kernels.

Same signatures and results as :mod:`hadminors.kernels._numba`; used when
numba is unavailable or ``HADMINORS_BACKEND=numpy``.  Batches are sized so
that no temporary exceeds roughly ``_CELLS`` int64 cells.
"""

from __future__ import annotations

import numpy as np

from ..combinatorics import subset_matrix

_CELLS = 1 << 22


def _row_sets(k, lo, hi, n):
    return subset_matrix(n, k)[lo:hi].astype(np.int64)


def _split_sq(total):
    total = int(total)
    return np.uint64(total & 0xFFFFFFFFFFFFFFFF), np.uint64(total >> 64)


def _accumulate(hist, values):
    u, c = np.unique(values, return_counts=True)
    for a, b in zip(u.tolist(), c.tolist()):
        hist[a] = hist.get(a, 0) + b


def _finish(hist):
    keys = np.fromiter(hist.keys(), dtype=np.int64, count=len(hist))
    counts = np.fromiter(hist.values(), dtype=np.int64, count=len(hist))
    sq = sum(k * k * c for k, c in hist.items())
    return keys, counts, sq


def _levels(A, rows, k, n, elems, childs, offsets):
    """Level-k arrays for a batch of row sets; shape ``(len(rows), C(n, k))``."""
    A64 = A.astype(np.int64)
    lev = A64[rows[:, k - 1]]
    for j in range(2, k + 1):
        size = (offsets[j + 1] - offsets[j]) // j
        e = elems[offsets[j]:offsets[j + 1]].reshape(size, j)
        ch = childs[offsets[j]:offsets[j + 1]].reshape(size, j)
        sign = np.where(np.arange(j) % 2 == 0, 1, -1).astype(np.int64)
        top = A64[rows[:, k - j]]
        lev = (top[:, e] * lev[:, ch] * sign).sum(axis=2)
    return lev


def _batch(n, k, offsets):
    widest = max(((offsets[j + 1] - offsets[j]) for j in range(1, k + 1)), default=1)
    return max(1, _CELLS // max(int(widest), 1))


def algd_histogram(A, k, lo, hi, elems, childs, offsets, binom):
    n = A.shape[0]
    hist: dict[int, int] = {}
    step = _batch(n, k, offsets)
    for a in range(lo, hi, step):
        rows = _row_sets(k, a, min(hi, a + step), n)
        lev = _levels(A, rows, k, n, elems, childs, offsets)
        _accumulate(hist, np.abs(lev).ravel() >> (k - 1))
    keys, counts, sq = _finish(hist)
    return (keys, counts) + _split_sq(sq)


def algd_block(A, k, lo, hi, elems, childs, offsets, binom):
    n = A.shape[0]
    step = _batch(n, k, offsets)
    parts = []
    for a in range(lo, hi, step):
        rows = _row_sets(k, a, min(hi, a + step), n)
        parts.append(_levels(A, rows, k, n, elems, childs, offsets))
    if not parts:
        return np.empty((0, int(binom[n, k])), dtype=np.int64)
    return np.concatenate(parts, axis=0)


def gepp_det(M):
    # LAPACK getrf: LU with partial pivoting
    return float(np.linalg.det(M))


def alga_histogram(A, k, lo, hi, binom):
    n = A.shape[0]
    cols = subset_matrix(n, k).astype(np.int64)
    ncols = cols.shape[0]
    Af = A.astype(np.float64)
    scale = 1.0 / 2.0 ** (k - 1)
    hist: dict[int, int] = {}
    step = max(1, _CELLS // max(ncols * k * k, 1))
    for a in range(lo, hi, step):
        rows = _row_sets(k, a, min(hi, a + step), n)
        sub = Af[rows[:, None, :, None], cols[None, :, None, :]]
        x = np.linalg.det(sub) * scale
        v = np.rint(x)
        bad = np.abs(x - v) > 0.125
        if bad.any():
            r, t = np.argwhere(bad)[0]
            keys, counts, sq = _finish(hist)
            return (keys, counts) + _split_sq(sq) + (a + int(r), int(t), float(x[r, t]))
        _accumulate(hist, np.abs(v).astype(np.int64).ravel())
    keys, counts, sq = _finish(hist)
    return (keys, counts) + _split_sq(sq) + (-1, -1, 0.0)


def bareiss_det_batch(stack):
    M = np.array(stack, dtype=np.int64, copy=True)
    B, m = M.shape[0], M.shape[1]
    if m == 0:
        return np.ones(B, dtype=np.int64)
    sign = np.ones(B, dtype=np.int64)
    prev = np.ones(B, dtype=np.int64)
    dead = np.zeros(B, dtype=bool)
    idx = np.arange(B)
    for c in range(m - 1):
        col = M[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        dead |= ~has
        piv = c + np.argmax(nz, axis=1)
        swap = has & (piv != c)
        if swap.any():
            s = idx[swap]
            p = piv[swap]
            rc = M[s, c].copy()
            M[s, c] = M[s, p]
            M[s, p] = rc
            sign[swap] = -sign[swap]
        p = M[:, c, c].copy()
        p[dead] = 1
        num = M[:, c + 1:, c + 1:] * p[:, None, None] - M[:, c + 1:, c, None] * M[:, c, None, c + 1:]
        M[:, c + 1:, c + 1:] = num // prev[:, None, None]
        prev = p
    out = sign * M[:, m - 1, m - 1]
    out[dead] = 0
    return out


def _reduced(words, m):
    N = words.shape[0]
    t = np.arange(m * m)
    bits = (words[:, t >> 6] >> (t & 63).astype(np.uint64)) & np.uint64(1)
    E = bits.astype(np.int64).reshape(N, m, m)
    return E[:, 1:, 1:] ^ E[:, 1:, :1] ^ E[:, :1, 1:] ^ E[:, :1, :1]


def pm1_normalized_dets(words, m):
    if m == 1:
        return np.ones(words.shape[0], dtype=np.int64)
    out = np.empty(words.shape[0], dtype=np.int64)
    step = max(1, _CELLS // (m * m))
    for a in range(0, words.shape[0], step):
        R = _reduced(words[a:a + step], m)
        out[a:a + step] = np.abs(bareiss_det_batch(R))
    return out


def pm1_gf2_even(words, m):
    N = words.shape[0]
    if m == 1:
        return np.zeros(N, dtype=bool)
    out = np.empty(N, dtype=bool)
    step = max(1, _CELLS // (m * m))
    for a in range(0, N, step):
        R = _reduced(words[a:a + step], m).astype(np.uint8)
        B = R.shape[0]
        rank = np.zeros(B, dtype=np.int64)
        idx = np.arange(B)
        for col in range(m - 1):
            # rows at or below the current rank with a 1 in this column
            below = np.arange(m - 1)[None, :] >= rank[:, None]
            cand = (R[:, :, col] == 1) & below
            has = cand.any(axis=1)
            piv = np.argmax(cand, axis=1)
            h = idx[has]
            if h.size == 0:
                continue
            r = rank[has]
            p = piv[has]
            tmp = R[h, r].copy()
            R[h, r] = R[h, p]
            R[h, p] = tmp
            prow = R[h, r]
            hit = R[h, :, col] == 1
            hit[np.arange(h.size), r] = False
            R[h] ^= hit[:, :, None].astype(np.uint8) * prow[:, None, :]
            rank[has] += 1
        out[a:a + step] = rank < m - 1
    return out
