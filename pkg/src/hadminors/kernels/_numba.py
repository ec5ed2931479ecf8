"""Compiled kernels.  Signatures mirror :mod:`hadminors.kernels._numpy`."""

from __future__ import annotations

import numpy as np
from numba import njit

_EMPTY = -1
_GOLDEN = np.uint64(11400714819323198485)


# -- open-addressing histogram ------------------------------------------------

@njit(cache=True)
def _hist_new(bits):
    keys = np.full(1 << bits, _EMPTY, dtype=np.int64)
    counts = np.zeros(1 << bits, dtype=np.int64)
    return keys, counts


@njit(cache=True)
def _hist_slot(keys, bits, v):
    mask = (1 << bits) - 1
    h = np.int64((np.uint64(v) * _GOLDEN) >> np.uint64(64 - bits))
    while keys[h] != _EMPTY and keys[h] != v:
        h = (h + 1) & mask
    return h


@njit(cache=True)
def _hist_grow(keys, counts, bits):
    nk, nc = _hist_new(bits + 1)
    for i in range(keys.shape[0]):
        if keys[i] != _EMPTY:
            h = _hist_slot(nk, bits + 1, keys[i])
            nk[h] = keys[i]
            nc[h] = counts[i]
    return nk, nc


@njit(cache=True)
def _hist_compact(keys, counts):
    n = 0
    for i in range(keys.shape[0]):
        if keys[i] != _EMPTY:
            n += 1
    k = np.empty(n, dtype=np.int64)
    c = np.empty(n, dtype=np.int64)
    t = 0
    for i in range(keys.shape[0]):
        if keys[i] != _EMPTY:
            k[t] = keys[i]
            c[t] = counts[i]
            t += 1
    return k, c


# -- combination stepping -----------------------------------------------------

@njit(cache=True)
def _unrank(rank, k, binom, out):
    r = rank
    for i in range(k, 0, -1):
        x = i - 1
        while binom[x + 1, i] <= r:
            x += 1
        out[i - 1] = x
        r -= binom[x, i]


@njit(cache=True)
def _successor(s, k):
    i = 0
    while i < k - 1 and s[i] + 1 == s[i + 1]:
        i += 1
    s[i] += 1
    for t in range(i):
        s[t] = t


# -- Algorithm D --------------------------------------------------------------

@njit(cache=True)
def _width(n, k, binom):
    w = n
    for j in range(1, k + 1):
        if binom[n, j] > w:
            w = binom[n, j]
    return w


@njit(cache=True)
def _levels(A, rows, k, n, elems, childs, offsets, binom, la, lb):
    """Fill and return the level-k array for row set ``rows`` (signed dets)."""
    last = rows[k - 1]
    for c in range(n):
        la[c] = A[last, c]
    prev = la
    cur = lb
    for j in range(2, k + 1):
        arow = A[rows[k - j]]
        base = offsets[j]
        size = binom[n, j]
        for t in range(size):
            o = base + t * j
            plus = np.int64(0)
            minus = np.int64(0)
            for p in range(0, j - 1, 2):
                plus += arow[elems[o + p]] * prev[childs[o + p]]
                minus += arow[elems[o + p + 1]] * prev[childs[o + p + 1]]
            if j & 1:
                plus += arow[elems[o + j - 1]] * prev[childs[o + j - 1]]
            cur[t] = plus - minus
        prev, cur = cur, prev
    return prev


@njit(cache=True, nogil=True)
def algd_histogram(A, k, lo, hi, elems, childs, offsets, binom):
    n = A.shape[0]
    width = _width(n, k, binom)
    la = np.zeros(width, dtype=np.int64)
    lb = np.zeros(width, dtype=np.int64)
    bits = 6
    keys, counts = _hist_new(bits)
    used = 0
    sq_lo = np.uint64(0)
    sq_hi = np.uint64(0)
    rows = np.zeros(k, dtype=np.int64)
    _unrank(lo, k, binom, rows)
    ncols = binom[n, k]
    shift = k - 1
    for r in range(lo, hi):
        lev = _levels(A, rows, k, n, elems, childs, offsets, binom, la, lb)
        for t in range(ncols):
            d = lev[t]
            if d < 0:
                d = -d
            v = d >> shift
            h = _hist_slot(keys, bits, v)
            if keys[h] == _EMPTY:
                keys[h] = v
                used += 1
            counts[h] += 1
            if 2 * used > (1 << bits):
                keys, counts = _hist_grow(keys, counts, bits)
                bits += 1
            sq = np.uint64(v) * np.uint64(v)
            old = sq_lo
            sq_lo += sq
            if sq_lo < old:
                sq_hi += np.uint64(1)
        if r + 1 < hi:
            _successor(rows, k)
    k_out, c_out = _hist_compact(keys, counts)
    return k_out, c_out, sq_lo, sq_hi


@njit(cache=True, nogil=True)
def algd_block(A, k, lo, hi, elems, childs, offsets, binom):
    n = A.shape[0]
    width = _width(n, k, binom)
    la = np.zeros(width, dtype=np.int64)
    lb = np.zeros(width, dtype=np.int64)
    ncols = binom[n, k]
    out = np.empty((hi - lo, ncols), dtype=np.int64)
    rows = np.zeros(k, dtype=np.int64)
    _unrank(lo, k, binom, rows)
    for r in range(lo, hi):
        lev = _levels(A, rows, k, n, elems, childs, offsets, binom, la, lb)
        for t in range(ncols):
            out[r - lo, t] = lev[t]
        if r + 1 < hi:
            _successor(rows, k)
    return out


# -- Algorithm A --------------------------------------------------------------

@njit(cache=True)
def gepp_det(M):
    """Determinant by Gaussian elimination with partial pivoting (destroys M)."""
    m = M.shape[0]
    det = 1.0
    for c in range(m):
        piv = c
        best = abs(M[c, c])
        for i in range(c + 1, m):
            a = abs(M[i, c])
            if a > best:
                best = a
                piv = i
        if best == 0.0:
            return 0.0
        if piv != c:
            for j in range(c, m):
                tmp = M[c, j]
                M[c, j] = M[piv, j]
                M[piv, j] = tmp
            det = -det
        p = M[c, c]
        det *= p
        for i in range(c + 1, m):
            f = M[i, c] / p
            if f != 0.0:
                for j in range(c + 1, m):
                    M[i, j] -= f * M[c, j]
    return det


@njit(cache=True, nogil=True)
def alga_histogram(A, k, lo, hi, binom):
    """Returns (keys, counts, sq_lo, sq_hi, hazard_row, hazard_col, hazard_value).

    ``hazard_row`` is -1 unless a scaled determinant had fractional part
    above 1/8; then the scan stops at that submatrix.
    """
    n = A.shape[0]
    bits = 6
    keys, counts = _hist_new(bits)
    used = 0
    sq_lo = np.uint64(0)
    sq_hi = np.uint64(0)
    rows = np.zeros(k, dtype=np.int64)
    cols = np.zeros(k, dtype=np.int64)
    M = np.empty((k, k), dtype=np.float64)
    scale = 1.0 / (2.0 ** (k - 1))
    ncols = binom[n, k]
    _unrank(lo, k, binom, rows)
    for r in range(lo, hi):
        for c in range(k):
            cols[c] = c
        for t in range(ncols):
            for i in range(k):
                for j in range(k):
                    M[i, j] = A[rows[i], cols[j]]
            x = gepp_det(M) * scale
            v = np.int64(np.round(x))
            if abs(x - v) > 0.125:
                kk, cc = _hist_compact(keys, counts)
                return kk, cc, sq_lo, sq_hi, r, t, x
            if v < 0:
                v = -v
            h = _hist_slot(keys, bits, v)
            if keys[h] == _EMPTY:
                keys[h] = v
                used += 1
            counts[h] += 1
            if 2 * used > (1 << bits):
                keys, counts = _hist_grow(keys, counts, bits)
                bits += 1
            sq = np.uint64(v) * np.uint64(v)
            old = sq_lo
            sq_lo += sq
            if sq_lo < old:
                sq_hi += np.uint64(1)
            if t + 1 < ncols:
                _successor(cols, k)
        if r + 1 < hi:
            _successor(rows, k)
    kk, cc = _hist_compact(keys, counts)
    return kk, cc, sq_lo, sq_hi, -1, -1, 0.0


# -- exact batches ------------------------------------------------------------

@njit(cache=True)
def _bareiss(M):
    m = M.shape[0]
    sign = 1
    prev = np.int64(1)
    for c in range(m - 1):
        if M[c, c] == 0:
            piv = -1
            for i in range(c + 1, m):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                return np.int64(0)
            for j in range(c, m):
                tmp = M[c, j]
                M[c, j] = M[piv, j]
                M[piv, j] = tmp
            sign = -sign
        p = M[c, c]
        for i in range(c + 1, m):
            for j in range(c + 1, m):
                M[i, j] = (M[i, j] * p - M[i, c] * M[c, j]) // prev
        prev = p
    return sign * M[m - 1, m - 1]


@njit(cache=True, nogil=True)
def bareiss_det_batch(stack):
    B = stack.shape[0]
    m = stack.shape[1]
    out = np.empty(B, dtype=np.int64)
    M = np.empty((m, m), dtype=np.int64)
    for b in range(B):
        if m == 0:
            out[b] = 1
            continue
        for i in range(m):
            for j in range(m):
                M[i, j] = stack[b, i, j]
        out[b] = _bareiss(M)
    return out


@njit(cache=True)
def _bit(words, b, t):
    return np.int64((words[b, t >> 6] >> np.uint64(t & 63)) & np.uint64(1))


@njit(cache=True)
def _unpack_reduced(words, b, m, R):
    """Sign-normalize the packed ±1 matrix ``b`` and store its 0/1 core in R."""
    # entry (i, j) is -1 iff bit i*m + j is set; the core entry is the
    # parity of the four corner signs (0 -> +1 after normalization)
    c = _bit(words, b, 0)
    for i in range(1, m):
        ri = _bit(words, b, i * m) ^ c
        for j in range(1, m):
            R[i - 1, j - 1] = _bit(words, b, i * m + j) ^ ri ^ _bit(words, b, j)


@njit(cache=True, nogil=True)
def pm1_normalized_dets(words, m):
    N = words.shape[0]
    out = np.empty(N, dtype=np.int64)
    R = np.empty((max(m - 1, 1), max(m - 1, 1)), dtype=np.int64)
    for b in range(N):
        if m == 1:
            out[b] = 1
            continue
        _unpack_reduced(words, b, m, R)
        d = _bareiss(R)
        out[b] = d if d >= 0 else -d
    return out


@njit(cache=True, nogil=True)
def pm1_gf2_even(words, m):
    N = words.shape[0]
    out = np.empty(N, dtype=np.bool_)
    R = np.empty((max(m - 1, 1), max(m - 1, 1)), dtype=np.int64)
    rowbits = np.empty(max(m - 1, 1), dtype=np.int64)
    for b in range(N):
        if m == 1:
            out[b] = False
            continue
        _unpack_reduced(words, b, m, R)
        for i in range(m - 1):
            x = np.int64(0)
            for j in range(m - 1):
                if R[i, j]:
                    x |= np.int64(1) << j
            rowbits[i] = x
        rank = 0
        for col in range(m - 1):
            piv = -1
            for i in range(rank, m - 1):
                if (rowbits[i] >> col) & 1:
                    piv = i
                    break
            if piv < 0:
                continue
            tmp = rowbits[rank]
            rowbits[rank] = rowbits[piv]
            rowbits[piv] = tmp
            for i in range(m - 1):
                if i != rank and (rowbits[i] >> col) & 1:
                    rowbits[i] ^= rowbits[rank]
            rank += 1
        out[b] = rank < m - 1
    return out
