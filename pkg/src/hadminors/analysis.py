"""Statistics derived from minor profiles."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .combinatorics import colex_unrank, complement_ranks
from .errors import CapacityError
from .matrix import Selector, SignMatrix, is_hadamard
from .minors import MinorProfile, minor_table
from .tables import MAXDET, MAXDET_NORMALIZED, SPECTRUM

# -- value-set notation ---------------------------------------------------------


def _ranges(values: list[int]) -> str:
    parts = []
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[j + 1] == values[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{values[i]}..{values[j]}")
        else:
            parts.extend(str(v) for v in values[i:j + 1])
        i = j + 1
    return "{" + ",".join(parts) + "}"


def scale_power(values, k: int) -> int:
    """Largest e with k^e dividing every value (0 if k < 2 or all values are 0)."""
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    if k < 2 or g == 0:
        return 0
    e = 0
    while g % k == 0:
        g //= k
        e += 1
    return e


def format_value_set(values, k: int = 0) -> str:
    """Compact notation, e.g. ``{0..2}*3^2``; parsed back by ``tables.parse_value_set``."""
    vals = sorted(int(v) for v in values)
    e = scale_power(vals, k)
    if e == 0:
        return _ranges(vals)
    f = k**e
    return f"{_ranges([v // f for v in vals])}*{k}^{e}"


# -- depth and full-spectrum threshold -----------------------------------------


@dataclass
class OrderRow:
    m: int
    values: str
    delta: Optional[int]
    max_flag: Optional[bool]
    full_flag: Optional[bool]  # None when the spectrum of order m is not tabulated


@dataclass
class DepthReport:
    n: int
    d: int
    m_d: int
    m_f: int
    rows: list[OrderRow] = field(default_factory=list)


def depth_report(profile: MinorProfile, maxdet=MAXDET_NORMALIZED, spectra=SPECTRUM) -> DepthReport:
    n = profile.n
    if not profile.is_complete():
        raise ValueError("depth report needs minors of every order 1..n")
    k = n // 4
    rows = []
    m_d = 0
    m_f = 0
    for m in range(n, 0, -1):
        vals = set(profile.counts[m])
        delta = maxdet.get(m)
        mx = None if delta is None else delta in vals
        full = None if m not in spectra else vals == set(spectra[m])
        rows.append(OrderRow(m, format_value_set(vals, k), delta, mx, full))
        if m < n and mx and m > m_d:
            m_d = m
        if full and m > m_f:
            m_f = m
    return DepthReport(n, n - m_d, m_d, m_f, rows)


# -- vanishing minors ---------------------------------------------------------------


def vanishing_count(profile: MinorProfile, m: int) -> int:
    return profile.counts[m].get(0, 0)


def predicted_z2(n: int) -> Fraction:
    """Number of vanishing order-2 minors of a Hadamard matrix of order n."""
    return Fraction(n * n * (n - 1) * (n - 2), 8)


def predicted_z3(n: int) -> Fraction:
    return Fraction(n * n * (n - 1) * (n - 2) * (n - 4) * (5 * n - 4), 288)


# -- mean squares -------------------------------------------------------------------


def render_sig(x: Fraction, digits: int = 4) -> str:
    """Round to ``digits`` significant figures; values >= 10^digits as integers."""
    if x >= 10 ** (digits - 1):
        return str(round(x))
    return f"{float(x):#.{digits}g}"


def render_fixed(x: Fraction, places: int = 3) -> str:
    return f"{float(x):.{places}f}"


@dataclass
class MeanSquareRow:
    m: int
    mean: Fraction  # E(det(M)^2) over all order-m submatrices
    r_lower: Fraction  # E / m!
    r_upper: Fraction  # E * C(n, m) / n^m

    def rendered(self) -> dict:
        return {"m": self.m, "E": str(self.mean), "R_L": render_sig(self.r_lower), "R_H": render_fixed(self.r_upper)}


@dataclass
class MeanSquareReport:
    n: int
    rows: list[MeanSquareRow]

    def row(self, m: int) -> MeanSquareRow:
        return next(r for r in self.rows if r.m == m)


def mean_square_report(profile: MinorProfile) -> MeanSquareReport:
    n = profile.n
    rows = []
    for m in profile.orders:
        c = math.comb(n, m)
        E = Fraction(profile.sum_squares[m], c * c)
        rows.append(MeanSquareRow(m, E, E / math.factorial(m), E * c / n**m))
    return MeanSquareReport(n, rows)


# -- complementary minors of Hadamard matrices -----------------------------------


@dataclass
class SzollosiResult:
    ok: bool
    checked: int
    bound_ok: bool
    counterexample: Optional[tuple[Selector, int, int]] = None  # selector, |det|, |complementary det|


def _scale(n: int, m: int) -> int:
    # n^(m - n/2) for even n and m >= n/2
    return math.isqrt(n ** (2 * m - n))


def szollosi_check(H: SignMatrix, orders=None, samples: Optional[int] = None, seed: int = 0) -> SzollosiResult:
    """Check |det H[R,C]| = n^(m-n/2) |det H[R',C']| against the complementary selector.

    Exhaustive over all selectors unless ``samples`` is given.  Also checks
    |det M| <= n^(m-n/2) D(n-m) for every order considered.
    """
    n = H.n
    if not is_hadamard(H):
        raise ValueError("input is not a Hadamard matrix")
    ms = sorted(orders) if orders is not None else list(range((n + 1) // 2, n + 1))
    if any(2 * m < n or m > n for m in ms):
        raise ValueError("orders must satisfy n/2 <= m <= n")
    if samples is None and n > 12:
        raise CapacityError("exhaustive check limited to order <= 12; pass samples")
    checked = 0
    bound_ok = True
    for m in ms:
        s = _scale(n, m)
        bound = s * MAXDET[n - m] if n - m > 0 else s
        if samples is None:
            T = np.abs(minor_table(H, m))
            if n - m:
                C = np.abs(minor_table(H, n - m))
                cr = complement_ranks(n, m)
                comp = C[np.ix_(cr, cr)]
            else:
                comp = np.ones_like(T)
            bad = np.argwhere(T != s * comp)
            checked += T.size
            if T.max() > bound:
                bound_ok = False
            if bad.size:
                r, c = (int(x) for x in bad[0])
                sel = Selector(colex_unrank(r, m, n), colex_unrank(c, m, n))
                return SzollosiResult(False, checked, bound_ok, (sel, int(T[r, c]), int(comp[r, c])))
        else:
            rng = np.random.default_rng([seed, m])
            a = H.entries.astype(np.int64)
            keys = rng.random((samples, 2, n)).argsort(axis=2)
            R, Cc = np.sort(keys[:, 0, :m], axis=1), np.sort(keys[:, 1, :m], axis=1)
            Rb, Cb = np.sort(keys[:, 0, m:], axis=1), np.sort(keys[:, 1, m:], axis=1)
            left = np.abs(kernels.bareiss_det_batch(a[R[:, :, None], Cc[:, None, :]]))
            if n - m:
                right = np.abs(kernels.bareiss_det_batch(a[Rb[:, :, None], Cb[:, None, :]]))
            else:
                right = np.ones(samples, dtype=np.int64)
            checked += samples
            if left.max() > bound:
                bound_ok = False
            bad = np.flatnonzero(left != s * right)
            if bad.size:
                i = int(bad[0])
                sel = Selector(tuple(int(x) for x in R[i]), tuple(int(x) for x in Cc[i]))
                return SzollosiResult(False, checked, bound_ok, (sel, int(left[i]), int(right[i])))
    return SzollosiResult(bound_ok, checked, bound_ok)


@dataclass
class CohnResult:
    ok: bool
    hadamard_orders: list[int]  # orders m in (n/2, n) where a Hadamard submatrix occurs


def cohn_check(profile: MinorProfile) -> CohnResult:
    """No proper submatrix of order m > n/2 of a Hadamard matrix is itself Hadamard."""
    n = profile.n
    hits = []
    for m in profile.orders:
        if 2 * m <= n or m >= n:
            continue
        raw = profile.max_value(m) << (m - 1)
        if raw * raw == m**m:
            hits.append(m)
    return CohnResult(not hits, hits)


# -- random ±1 matrices ---------------------------------------------------------------

RANDOM_CHUNK = 1 << 20


@dataclass
class RandomModelHistogram:
    m: int
    samples: int
    seed: int
    generator: str
    counts: dict[int, int]
    even: int  # samples with even normalized determinant, by GF(2) rank

    @property
    def even_fraction(self) -> float:
        return self.even / self.samples

    def fraction(self, v: int) -> float:
        return self.counts.get(v, 0) / self.samples


def _random_chunk(m: int, size: int, seed_seq: np.random.SeedSequence):
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    words = rng.integers(0, 2**64, size=(size, (m * m + 63) // 64), dtype=np.uint64, endpoint=False)
    vals = kernels.pm1_normalized_dets(words, m)
    even = int(kernels.pm1_gf2_even(words, m).sum())
    keys, counts = np.unique(vals, return_counts=True)
    return dict(zip(keys.tolist(), counts.tolist())), even


def random_model(m: int, samples: int, seed: int = 0, workers: int = 1) -> RandomModelHistogram:
    """Histogram of normalized |det| over uniformly random m x m ±1 matrices.

    Samples are drawn in fixed chunks of ``RANDOM_CHUNK``, each from a PCG64
    stream spawned from ``SeedSequence(seed)``, so results do not depend on
    ``workers``.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if not 1 <= m <= 21:
        raise CapacityError("random model supports 1 <= m <= 21")
    nchunks = -(-samples // RANDOM_CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(nchunks)
    sizes = [min(RANDOM_CHUNK, samples - i * RANDOM_CHUNK) for i in range(nchunks)]
    jobs = list(zip(sizes, seqs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda j: _random_chunk(m, *j), jobs))
    else:
        results = [_random_chunk(m, *j) for j in jobs]
    counts: dict[int, int] = {}
    even = 0
    for hist, e in results:
        even += e
        for v, c in hist.items():
            counts[v] = counts.get(v, 0) + c
    return RandomModelHistogram(m, samples, seed, "PCG64/SeedSequence", dict(sorted(counts.items())), even)


def even_limit_constant() -> float:
    """Limit of the probability that a random ±1 matrix has even normalized determinant."""
    p = 1.0
    k = 1
    while 2.0**-k >= 2.0**-60:
        p *= 1.0 - 2.0**-k
        k += 1
    return 1.0 - p


# -- bundled report -----------------------------------------------------------------


def gcd_power(profile: MinorProfile, m: int) -> Optional[int]:
    """Largest power of floor(n/4) dividing the gcd of the order-m normalized minors."""
    k = profile.n // 4
    if k < 2:
        return None
    return scale_power(profile.counts[m], k)


@dataclass
class MinorReport:
    n: int
    hadamard: bool
    depth: DepthReport
    mean_square: MeanSquareReport
    vanishing: dict[int, int]
    predicted_vanishing: dict[int, str]
    gcd_powers: dict[int, Optional[int]]
    szollosi: Optional[SzollosiResult] = None
    cohn: Optional[CohnResult] = None

    def to_dict(self) -> dict:
        d = {
            "order": self.n,
            "hadamard": self.hadamard,
            "depth": {"d": self.depth.d, "m_d": self.depth.m_d, "m_f": self.depth.m_f},
            "orders": [asdict(r) for r in self.depth.rows],
            "mean_square": [r.rendered() for r in self.mean_square.rows],
            "vanishing": {str(m): c for m, c in self.vanishing.items()},
            "predicted_vanishing": self.predicted_vanishing,
            "gcd_power": {str(m): p for m, p in self.gcd_powers.items()},
        }
        if self.szollosi is not None:
            d["szollosi"] = {"ok": self.szollosi.ok, "checked": self.szollosi.checked,
                             "bound_ok": self.szollosi.bound_ok}
        if self.cohn is not None:
            d["cohn"] = {"ok": self.cohn.ok, "hadamard_orders": self.cohn.hadamard_orders}
        return d

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "values", "delta", "max", "full"])
        for r in self.depth.rows:
            w.writerow([r.m, r.values, r.delta, _flag(r.max_flag), _flag(r.full_flag)])
        return buf.getvalue()


def _flag(x: Optional[bool]) -> str:
    return "?" if x is None else ("yes" if x else "no")


def minor_report(A: SignMatrix, profile: MinorProfile, check_pairs: bool = True) -> MinorReport:
    n = profile.n
    had = is_hadamard(A)
    predicted = {}
    if had and n % 4 == 0:
        predicted = {"2": str(predicted_z2(n)), "3": str(predicted_z3(n))}
    elif n % 4 == 3 and n >= 3:
        predicted = {"2": str(math.ceil(predicted_z2(n)))}
    szo = None
    if had and check_pairs and n <= 12:
        szo = szollosi_check(A)
    return MinorReport(
        n=n,
        hadamard=had,
        depth=depth_report(profile),
        mean_square=mean_square_report(profile),
        vanishing={m: vanishing_count(profile, m) for m in profile.orders},
        predicted_vanishing=predicted,
        gcd_powers={m: gcd_power(profile, m) for m in profile.orders},
        szollosi=szo,
        cohn=cohn_check(profile) if had else None,
    )
