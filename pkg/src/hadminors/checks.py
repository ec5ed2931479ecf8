"""Self-check suites run by ``hadminors verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import bounds
from .analysis import (
    cohn_check,
    depth_report,
    mean_square_report,
    predicted_z2,
    predicted_z3,
    szollosi_check,
    vanishing_count,
)
from .catalog import paley_hadamard, representative, sylvester
from .matrix import SignMatrix, apply_equivalence, random_equivalence_ops, random_sign_matrix
from .minors import MinorProfile, enumerate_minors_algA, enumerate_minors_algD
from .tables import resolve_appendix


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def hadamard_of_order(n: int) -> SignMatrix:
    if n & (n - 1) == 0:
        return sylvester(n.bit_length() - 1)
    if n - 1 in (3, 7, 11, 19, 23):
        return paley_hadamard(n - 1)
    raise ValueError(f"no built-in Hadamard matrix of order {n}")


def profile_matches_table(p: MinorProfile, table) -> Optional[str]:
    """None when the profile agrees with an appendix table, else the first mismatch."""
    ref = resolve_appendix(table)
    dr = depth_report(p)
    flags = {r.m: r for r in dr.rows}
    for m in range(1, p.n + 1):
        e = ref[m]
        got = set(p.counts[m])
        if e.values is not None and got != set(e.values):
            return f"order {m}: values differ"
        if (min(got), max(got)) != e.min_max:
            return f"order {m}: range {(min(got), max(got))} != {e.min_max}"
        if e.max_flag is not None and flags[m].max_flag != e.max_flag:
            return f"order {m}: max flag {flags[m].max_flag}"
        if e.full_flag is not None and flags[m].full_flag is not None and flags[m].full_flag != e.full_flag:
            return f"order {m}: full flag {flags[m].full_flag}"
    return None


def suite_tables(order: Optional[int] = None) -> list[Check]:
    cases = [(4, sylvester(2), 9), (8, sylvester(3), 13), (12, paley_hadamard(11), 19)]
    out = []
    for n, H, t in cases:
        if order is not None and n != order:
            continue
        miss = profile_matches_table(enumerate_minors_algD(H), t)
        out.append(Check(f"order {n} profile vs table {t}", miss is None, miss or ""))
    return out


def suite_szollosi(order: Optional[int] = None) -> list[Check]:
    out = []
    for n in [order] if order else [4, 8]:
        H = hadamard_of_order(n)
        res = szollosi_check(H) if n <= 12 else szollosi_check(H, samples=10**4)
        detail = f"{res.checked} selectors"
        if res.counterexample:
            sel, a, b = res.counterexample
            detail += f"; rows {sel.rows} cols {sel.cols}: {a} vs {b}"
        out.append(Check(f"complementary minors, order {n}", res.ok, detail))
    return out


def suite_vanishing(order: Optional[int] = None) -> list[Check]:
    out = []
    for n in [order] if order else [4, 8, 12, 16]:
        p = enumerate_minors_algD(hadamard_of_order(n), orders=[2, 3])
        z2, z3 = vanishing_count(p, 2), vanishing_count(p, 3)
        ok = z2 == predicted_z2(n) and z3 == predicted_z3(n)
        out.append(Check(f"vanishing 2- and 3-minors, order {n}", ok,
                         f"{z2}/{predicted_z2(n)}, {z3}/{predicted_z3(n)}"))
    return out


def suite_meansquare(order: Optional[int] = None) -> list[Check]:
    out = []
    for n in [order] if order else [4, 8, 12]:
        ms = mean_square_report(enumerate_minors_algD(hadamard_of_order(n)))
        bad = [r.m for r in ms.rows if r.m >= 2 and r.r_upper != 1]
        out.append(Check(f"R_H = 1 at order {n}", not bad, f"failing orders {bad}" if bad else ""))
    ms = mean_square_report(enumerate_minors_algD(representative(7)))
    out.append(Check("R_H < 1 somewhere for order-7 maxdet", any(r.r_upper < 1 for r in ms.rows)))
    return out


def suite_cohn(order: Optional[int] = None) -> list[Check]:
    out = []
    for n in [order] if order else [4, 8, 12]:
        res = cohn_check(enumerate_minors_algD(hadamard_of_order(n)))
        out.append(Check(f"no Hadamard submatrix above n/2, order {n}", res.ok, str(res.hadamard_orders)))
    return out


def suite_cross(order: Optional[int] = None, seed: int = 0, count: int = 20) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    orders = [order] if order else list(range(2, 11))
    for i in range(count):
        n = orders[i % len(orders)]
        A = random_sign_matrix(n, rng)
        pD = enumerate_minors_algD(A)
        ok = pD == enumerate_minors_algA(A)
        B = apply_equivalence(A, random_equivalence_ops(n, rng))
        ok = ok and enumerate_minors_algD(B) == pD
        out.append(Check(f"random order {n} #{i}: A = D, equivalence invariant", ok))
    return out


def suite_bounds(order: Optional[int] = None) -> list[Check]:
    xm = bounds.x_max()
    zs = np.linspace(0.01, 0.67, 200)
    eps_gap = max(abs(bounds.epsilon(z) - bounds.epsilon_series(z)) for z in zs)
    out = [
        Check("f'(x_max) = 0", abs(bounds.f_prime(xm)) < 1e-10),
        Check("0.14 < f(x_max) < 0.15", 0.14 < bounds.f(xm) < 0.15, f"{bounds.f(xm):.6f}"),
        Check("epsilon series = closed form", eps_gap <= 1e-10, f"max gap {eps_gap:.2e}"),
        Check("epsilon(z_max) < 0.1803", bounds.epsilon(bounds.z_max()) < 0.1803),
        Check("depth-3 inequality holds iff n <= 28",
              all(bounds.depth3_inequality_holds(n) == (n <= 28) for n in range(8, 10001))),
    ]
    for n in [order] if order else [29, 100, 1000]:
        iv = bounds.excluded_interval(n)
        ok = not iv.empty and iv.x1 > 1 - 3 / n and n * iv.x0 < n / 2 + 5 * math.log(n)
        out.append(Check(f"excluded interval, n = {n}", ok, f"({iv.x0:.6f}, {iv.x1:.6f})"))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "tables": suite_tables,
    "szollosi": suite_szollosi,
    "vanishing": suite_vanishing,
    "meansquare": suite_meansquare,
    "cohn": suite_cohn,
    "cross": suite_cross,
    "bounds": suite_bounds,
}


def run_suite(name: str, order: Optional[int] = None) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    return [c for k in names for c in SUITES[k](order)]
