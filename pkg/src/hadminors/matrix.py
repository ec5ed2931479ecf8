"""±1 matrices: value type, text format, determinants, equivalence operations."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO, Union

import numpy as np

from . import kernels
from .errors import CapacityError, ParseError, RoundingHazardError

MAX_ORDER = 32
EXACT_MAX_ORDER = 21
FLOAT_MAX_ORDER = 25


class SignMatrix:
    """Immutable square matrix with entries in {+1, -1}.

    Entries are held as an ``int8`` array; each row is also mirrored as a
    bitmask with bit ``j`` set when column ``j`` holds -1.
    """

    __slots__ = ("_a", "_masks")

    def __init__(self, entries):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        n = a.shape[0]
        if not 1 <= n <= MAX_ORDER:
            raise CapacityError(f"order {n} outside 1..{MAX_ORDER}")
        if not np.all((a == 1) | (a == -1)):
            raise ValueError("entries must be +1 or -1")
        a = a.astype(np.int8)
        a.setflags(write=False)
        self._a = a
        bits = (a == -1).astype(np.int64) << np.arange(n, dtype=np.int64)
        self._masks = tuple(int(x) for x in bits.sum(axis=1))

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only ``int8`` view of the entries."""
        return self._a

    @property
    def row_masks(self) -> tuple[int, ...]:
        return self._masks

    def __array__(self, dtype=None, copy=None):
        return self._a.astype(dtype) if dtype is not None else self._a.copy()

    def __eq__(self, other):
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.n, self._masks))

    def __repr__(self):
        return f"SignMatrix(n={self.n})"

    def __str__(self):
        return serialize(self).rstrip("\n")

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        return self._a[np.ix_(list(rows), list(cols))]

    @property
    def T(self) -> "SignMatrix":
        return SignMatrix(self._a.T)

    @classmethod
    def from_masks(cls, masks: Sequence[int], n: int) -> "SignMatrix":
        return cls([[-1 if (m >> j) & 1 else 1 for j in range(n)] for m in masks])


@dataclass(frozen=True)
class Selector:
    """Row and column index sets of an ``m x m`` submatrix."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        for name in ("rows", "cols"):
            idx = getattr(self, name)
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"{name} must be strictly increasing: {idx}")
            if idx and idx[0] < 0:
                raise ValueError(f"negative index in {name}: {idx}")
        if len(self.rows) != len(self.cols):
            raise ValueError("row and column selections differ in size")

    @property
    def m(self) -> int:
        return len(self.rows)

    def check(self, n: int) -> None:
        if (self.rows and self.rows[-1] >= n) or (self.cols and self.cols[-1] >= n):
            raise IndexError(f"selector {self} out of range for order {n}")


# -- text format ----------------------------------------------------------------

def parse_matrix(text: Union[str, TextIO]) -> SignMatrix:
    """Read the text format: the order on line 1, then one row of ``+``/``-`` per line."""
    if not isinstance(text, str):
        text = text.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln.rstrip("\r") for ln in lines]
    if not lines:
        raise ParseError("empty input", line=1, column=1)
    head = lines[0].strip()
    if not head.isdigit():
        raise ParseError(f"header must be a decimal order, got {lines[0]!r}", line=1, column=1)
    n = int(head)
    if not 1 <= n <= MAX_ORDER:
        raise ParseError(f"order {n} outside 1..{MAX_ORDER}", line=1, column=1)
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}", line=min(len(lines) + 1, n + 2), column=1)
    rows = []
    for i, ln in enumerate(body, start=2):
        if len(ln) != n:
            raise ParseError(f"row has {len(ln)} characters, expected {n}", line=i, column=min(len(ln), n) + 1)
        row = []
        for j, ch in enumerate(ln, start=1):
            if ch == "+":
                row.append(1)
            elif ch == "-":
                row.append(-1)
            else:
                raise ParseError(f"unexpected character {ch!r}", line=i, column=j)
        rows.append(row)
    return SignMatrix(rows)


def serialize(A: SignMatrix) -> str:
    out = io.StringIO()
    out.write(f"{A.n}\n")
    for row in A.entries:
        out.write("".join("+" if x > 0 else "-" for x in row))
        out.write("\n")
    return out.getvalue()


def read_matrix(path) -> SignMatrix:
    with open(path, encoding="ascii") as fh:
        return parse_matrix(fh)


def write_matrix(A: SignMatrix, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize(A))


# -- determinants ------------------------------------------------------------------

def _as_int_matrix(A) -> np.ndarray:
    a = np.asarray(A.entries if isinstance(A, SignMatrix) else A)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def det_exact(A) -> int:
    """Exact signed determinant by fraction-free (Bareiss) elimination."""
    a = _as_int_matrix(A)
    n = a.shape[0]
    if n > EXACT_MAX_ORDER:
        raise CapacityError(f"det_exact supports order <= {EXACT_MAX_ORDER}, got {n}")
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        p = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * p - f * rk[j]) // prev
        prev = p
    return sign * M[n - 1][n - 1]


def det_float_guarded(M: SignMatrix) -> int:
    """Determinant via partial-pivoting Gaussian elimination in float64.

    The result is divided by ``2**(n-1)``, rounded, and scaled back.  A
    fractional part above 1/8 raises :class:`RoundingHazardError`.
    """
    a = _as_int_matrix(M)
    n = a.shape[0]
    if n > FLOAT_MAX_ORDER:
        raise CapacityError(f"det_float_guarded supports order <= {FLOAT_MAX_ORDER}, got {n}")
    x = kernels.gepp_det(np.array(a, dtype=np.float64)) / 2.0 ** (n - 1)
    v = round(x)
    if abs(x - v) > 0.125:
        raise RoundingHazardError(f"scaled determinant {x!r} is not near an integer")
    return int(v) << (n - 1)


def normalized_minor(det: int, m: int) -> int:
    """``|det| / 2**(m-1)`` for an order-``m`` ±1 determinant."""
    q, r = divmod(abs(det), 1 << (m - 1))
    if r:
        raise ValueError(f"{det} is not divisible by 2^{m - 1}")
    return q


def det_parity_gf2(M: SignMatrix) -> str:
    """``"even"`` or ``"odd"``: parity of the normalized determinant.

    After sign-normalizing the first row and column, the normalized
    determinant equals ``|det B|`` for the 0/1 core ``B``; its parity is
    whether ``B`` has full rank over GF(2).
    """
    a = _as_int_matrix(M)
    m = a.shape[0]
    if m == 1:
        return "odd"
    signs = np.asarray(a, dtype=np.int64)
    N = signs * signs[:, :1] * signs[:1, :] * signs[0, 0]
    rows = []
    for i in range(1, m):
        x = 0
        for j in range(1, m):
            if N[i, j] < 0:
                x |= 1 << (j - 1)
        rows.append(x)
    rank = 0
    for col in range(m - 1):
        piv = next((r for r in range(rank, len(rows)) if (rows[r] >> col) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and (rows[r] >> col) & 1:
                rows[r] ^= rows[rank]
        rank += 1
    return "odd" if rank == m - 1 else "even"


def gram(A: SignMatrix) -> np.ndarray:
    a = A.entries.astype(np.int64)
    return a @ a.T


def is_hadamard(A: SignMatrix) -> bool:
    n = A.n
    return bool(np.array_equal(gram(A), n * np.eye(n, dtype=np.int64)))


def hadamard_bound(m: int) -> float:
    return m ** (m / 2)


# -- Hadamard / HT equivalence ------------------------------------------------

Op = tuple  # ("negate_row", i) | ("negate_col", j) | ("swap_rows", i, j) | ("swap_cols", i, j) | ("transpose",)

OP_NAMES = ("negate_row", "negate_col", "swap_rows", "swap_cols", "transpose")


def apply_equivalence(A: SignMatrix, ops: Iterable[Op]) -> SignMatrix:
    """Apply a sequence of row/column negations, swaps, and transposes."""
    a = A.entries.astype(np.int8).copy()
    n = A.n

    def idx(i):
        if not 0 <= i < n:
            raise IndexError(f"index {i} out of range for order {n}")
        return i

    for op in ops:
        name, *args = op
        if name == "negate_row":
            a[idx(args[0])] *= -1
        elif name == "negate_col":
            a[:, idx(args[0])] *= -1
        elif name == "swap_rows":
            i, j = idx(args[0]), idx(args[1])
            a[[i, j]] = a[[j, i]]
        elif name == "swap_cols":
            i, j = idx(args[0]), idx(args[1])
            a[:, [i, j]] = a[:, [j, i]]
        elif name == "transpose":
            a = a.T.copy()
        else:
            raise ValueError(f"unknown operation {name!r}")
    return SignMatrix(a)


def random_equivalence_ops(n: int, rng: np.random.Generator, length: int = 12) -> list[Op]:
    ops: list[Op] = []
    for _ in range(length):
        name = OP_NAMES[int(rng.integers(len(OP_NAMES)))]
        if name in ("negate_row", "negate_col"):
            ops.append((name, int(rng.integers(n))))
        elif name in ("swap_rows", "swap_cols"):
            ops.append((name, int(rng.integers(n)), int(rng.integers(n))))
        else:
            ops.append((name,))
    return ops


def normalize(A: SignMatrix) -> SignMatrix:
    """Negate rows and columns so the first row and column are all +1."""
    a = A.entries.astype(np.int64)
    a = a * a[:, :1]
    a = a * a[:1, :]
    return SignMatrix(a)


def random_sign_matrix(n: int, rng: np.random.Generator) -> SignMatrix:
    return SignMatrix(rng.choice(np.array([-1, 1]), size=(n, n)))


def max_normalized(m: int) -> int:
    """Largest normalized value the Hadamard bound allows at order ``m``."""
    # m^(m/2) / 2^(m-1), floored, computed exactly
    if m % 2 == 0:
        return m ** (m // 2) >> (m - 1)
    return math.isqrt(m ** m) >> (m - 1)
