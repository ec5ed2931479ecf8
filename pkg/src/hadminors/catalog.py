"""Hadamard constructions, maxdet search, and access to the reference tables."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import numpy as np

from . import kernels
from .errors import CapacityError, HadminorsError
from .matrix import SignMatrix, det_exact, is_hadamard, normalize, parse_matrix
from .tables import MAXDET, MAXDET_NORMALIZED, SPECTRUM

PALEY_PRIMES = (3, 7, 11, 19, 23)


# -- constructions ------------------------------------------------------------

def sylvester(k: int) -> SignMatrix:
    if not 0 <= k <= 5:
        raise CapacityError(f"sylvester order 2^{k} outside 1..32")
    H = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        H = np.block([[H, H], [H, -H]])
    return SignMatrix(H)


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q**0.5) + 1))


def paley_hadamard(q: int) -> SignMatrix:
    """Paley type I Hadamard matrix of order q + 1."""
    if not _is_prime(q) or q % 4 != 3:
        raise ValueError(f"q={q} must be a prime congruent to 3 mod 4")
    if q + 1 > 32:
        raise CapacityError(f"order {q + 1} exceeds 32")
    squares = {(x * x) % q for x in range(1, q)}
    chi = np.array([0] + [1 if x in squares else -1 for x in range(1, q)], dtype=np.int64)
    idx = np.arange(q)
    Q = chi[(idx[None, :] - idx[:, None]) % q]
    S = np.zeros((q + 1, q + 1), dtype=np.int64)
    S[0, 1:] = 1
    S[1:, 0] = -1
    S[1:, 1:] = Q
    H = SignMatrix(np.eye(q + 1, dtype=np.int64) + S)
    assert is_hadamard(H)
    return H


def kron(H1: SignMatrix, H2: SignMatrix) -> SignMatrix:
    for H in (H1, H2):
        if not is_hadamard(H):
            raise ValueError("kron expects Hadamard inputs")
    if H1.n * H2.n > 32:
        raise CapacityError(f"order {H1.n * H2.n} exceeds 32")
    return SignMatrix(np.kron(H1.entries.astype(np.int64), H2.entries.astype(np.int64)))


def projective_plane_13() -> SignMatrix:
    """J - 2N for the point-line incidence matrix N of PG(2, 3); Gram = 12I + J."""
    block = {0, 1, 3, 9}  # perfect difference set mod 13
    N = np.array([[1 if (j - i) % 13 in block else 0 for j in range(13)] for i in range(13)])
    return SignMatrix(1 - 2 * N)


# -- reference tables ----------------------------------------------------------

def maxdet(n: int) -> int:
    """D(n), the largest |det| of an order-n ±1 matrix (n <= 21)."""
    if n not in MAXDET:
        raise CapacityError(f"maximal determinant unknown for order {n}")
    return MAXDET[n]


def maxdet_normalized(n: int) -> int:
    if n not in MAXDET_NORMALIZED:
        raise CapacityError(f"maximal determinant unknown for order {n}")
    return MAXDET_NORMALIZED[n]


def spectrum(n: int) -> list[int]:
    if n not in SPECTRUM:
        raise ValueError(f"spectrum tabulated for 1 <= n <= 11, got {n}")
    return sorted(SPECTRUM[n])


def spectrum_bruteforce(n: int, chunk: int = 1 << 20) -> list[int]:
    """Recompute the spectrum over all 2^((n-1)^2) sign-normalized matrices."""
    if not 1 <= n <= 6:
        raise CapacityError("brute-force spectrum limited to n <= 6")
    if n == 1:
        return [1]
    free = [(i * n + j) for i in range(1, n) for j in range(1, n)]
    total = 1 << len(free)
    seen: set[int] = set()
    for a in range(0, total, chunk):
        idx = np.arange(a, min(total, a + chunk), dtype=np.uint64)
        w = np.zeros(idx.shape[0], dtype=np.uint64)
        for b, pos in enumerate(free):
            w |= ((idx >> np.uint64(b)) & np.uint64(1)) << np.uint64(pos)
        seen.update(np.unique(kernels.pm1_normalized_dets(w[:, None], n)).tolist())
    return sorted(seen)


# -- search ------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchBudget:
    nodes: int = 10_000_000
    seconds: float = 600.0

    def __post_init__(self):
        if self.nodes <= 0 or self.seconds <= 0:
            raise ValueError("search budget must be positive")


class SearchExhausted(HadminorsError):
    def __init__(self, n: int, nodes: int, best: int, complete: bool):
        self.n = n
        self.nodes = nodes
        self.best = best
        self.complete = complete
        what = "search space exhausted" if complete else "budget exhausted"
        super().__init__(f"order {n}: {what} after {nodes} nodes, best |det| = {best}")


def completion_bound(rows: np.ndarray, n: int) -> float:
    """Upper bound on |det| over all ±1 completions of the given top rows.

    Each added row has a Gram-Schmidt residual of squared norm at most n,
    so det^2 <= (product of current residuals^2) * n^(n - k).
    """
    rows = np.asarray(rows, dtype=np.float64)
    k = rows.shape[0]
    if k == 0:
        return float(n) ** (n / 2)
    g = np.linalg.det(rows @ rows.T) if k else 1.0
    return float(np.sqrt(max(g, 0.0) * float(n) ** (n - k)))


def _bb_search(n: int, target: int, budget: SearchBudget):
    """Depth-first search over rows in canonical form.

    Rows are strictly increasing when read as binary numbers (column 0 is the
    most significant bit, 1 meaning -1); first row and column are all +1.
    Columns that agree on all rows so far form a class, and each new row is
    +1 then -1 within every class, which keeps columns in lexical order.
    """
    t2 = float(target) ** 2 * (1 - 1e-9)
    deadline = time.monotonic() + budget.seconds
    nodes = 0
    best = 0
    rows: list[np.ndarray] = [np.ones(n)]
    basis: list[np.ndarray] = [np.ones(n) / np.sqrt(n)]

    def candidates(classes, prev):
        ranges = [range(1 if s == 0 else 0, sz + 1) for s, sz in classes]
        out = []
        for ts in itertools.product(*ranges):
            v = 0
            ent = np.ones(n)
            for (s, sz), t in zip(classes, ts):
                ent[s + t:s + sz] = -1
                for j in range(s + t, s + sz):
                    v |= 1 << (n - 1 - j)
            if v > prev:
                out.append((v, ent, ts))
        out.sort(key=lambda c: c[0])
        return out

    def rec(k, classes, prev, vol):
        nonlocal nodes, best
        nodes += 1
        if nodes > budget.nodes or time.monotonic() > deadline:
            raise TimeoutError
        if k == n:
            return True
        left = n - k - 1  # rows still to place after this one
        B = np.array(basis)
        for v, ent, ts in candidates(classes, prev):
            res = ent - B.T @ (B @ ent)
            nr = float(res @ res)
            if nr < 1e-9:
                continue
            nv = vol * nr
            if left == 0:
                best = max(best, int(round(np.sqrt(nv))))
            if nv * float(n) ** left < t2:
                continue
            newcl = []
            for (s, sz), t in zip(classes, ts):
                for ss, zz in ((s, t), (s + t, sz - t)):
                    if zz:
                        newcl.append((ss, zz))
            if any(zz > 1 << left for _, zz in newcl):
                continue
            rows.append(ent)
            basis.append(res / np.sqrt(nr))
            if rec(k + 1, newcl, v, nv):
                return True
            rows.pop()
            basis.pop()
        return False

    try:
        found = rec(1, [(0, n)], 0, float(n)) if n > 1 else True
    except TimeoutError:
        raise SearchExhausted(n, nodes, best, complete=False) from None
    if not found:
        raise SearchExhausted(n, nodes, best, complete=True)
    return np.array(rows, dtype=np.int64), nodes


def _local_search(n: int, target: int, budget: SearchBudget, seed: int):
    """Greedy single-entry flips ranked by the rank-one update factor, with random kicks."""
    rng = np.random.default_rng(seed)
    deadline = time.monotonic() + budget.seconds
    best = 0
    A = rng.choice(np.array([-1.0, 1.0]), size=(n, n))
    for it in range(1, budget.nodes + 1):
        if time.monotonic() > deadline:
            break
        d = np.linalg.det(A)
        if abs(d) < 0.5:
            A = rng.choice(np.array([-1.0, 1.0]), size=(n, n))
            continue
        # flipping a_ij multiplies det by 1 - 2 a_ij (A^-1)_ji
        fac = np.abs(1 - 2 * A * np.linalg.inv(A).T)
        i, j = np.unravel_index(np.argmax(fac), fac.shape)
        if fac[i, j] > 1 + 1e-9:
            A[i, j] = -A[i, j]
            continue
        cur = abs(det_exact(A.astype(np.int64)))
        best = max(best, cur)
        if cur >= target:
            return A.astype(np.int64), it
        for _ in range(int(rng.integers(1, 4))):
            a, b = rng.integers(0, n, 2)
            A[a, b] = -A[a, b]
    raise SearchExhausted(n, budget.nodes if time.monotonic() <= deadline else it, best, complete=False)


BB_MAX_ORDER = 9


def search_maxdet(n: int, target: Optional[int] = None, budget: Optional[SearchBudget] = None,
                  seed: int = 0) -> SignMatrix:
    """Find a ±1 matrix with |det| >= target (default D(n)), first row and column +1.

    Orders up to 9 use exhaustive branch and bound in lexicographic order;
    larger orders use a seeded local search, which may fail within budget.
    """
    if not 1 <= n <= 21:
        raise CapacityError(f"search supports 1 <= n <= 21, got {n}")
    target = maxdet(n) if target is None else int(target)
    budget = budget or SearchBudget()
    if n <= BB_MAX_ORDER:
        rows, _ = _bb_search(n, target, budget)
    else:
        rows, _ = _local_search(n, target, budget, seed)
    A = normalize(SignMatrix(rows))
    assert abs(det_exact(A)) >= target
    return A


# -- shipped representatives --------------------------------------------------------

def _data_file(n: int):
    f = resources.files("hadminors") / "data" / f"maxdet_{n}.txt"
    return f if f.is_file() else None


def shipped_orders() -> list[int]:
    return [n for n in range(1, 22) if _data_file(n) is not None]


def representative(n: int, budget: Optional[SearchBudget] = None, seed: int = 0) -> SignMatrix:
    """A maxdet matrix of order n: Hadamard construction, shipped file, or search."""
    if n in (1, 2, 4, 8, 16, 32):
        return sylvester(n.bit_length() - 1)
    if n - 1 in PALEY_PRIMES:
        return paley_hadamard(n - 1)
    if n == 13:
        return projective_plane_13()
    f = _data_file(n)
    if f is not None:
        return parse_matrix(f.read_text(encoding="ascii"))
    return search_maxdet(n, budget=budget, seed=seed)


def construct(spec: str) -> SignMatrix:
    """Build a matrix from ``NAME:ARG``: sylvester:K, paley:Q, maxdet:N, kron:A,B."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    try:
        if name == "sylvester":
            return sylvester(int(arg))
        if name == "paley":
            return paley_hadamard(int(arg))
        if name == "maxdet":
            return representative(int(arg))
        if name == "kron":
            a, b = arg.split(",")
            return kron(construct(a.replace("/", ":")), construct(b.replace("/", ":")))
    except ValueError as e:
        if isinstance(e, CapacityError):
            raise
        raise CapacityError(f"bad construction {spec!r}: {e}") from e
    raise CapacityError(f"unknown construction {spec!r}")
