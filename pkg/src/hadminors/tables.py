"""Published reference data for ±1 matrices of order <= 21.

Value sets use a compact notation: ``{0..3, 5}`` is ``{0, 1, 2, 3, 5}``,
``{1, 2}*3^5`` scales every element by ``3**5``, and ``(0, 800)*5^1`` is a
(min, max) pair where only the extremes of the set are recorded.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Optional, Union

# -- notation -------------------------------------------------------------------

_SCALE = re.compile(r"^\s*(?P<body>[\{\(].*[\}\)])\s*(?:\*\s*(?P<base>\d+)\^(?P<exp>\d+))?\s*$")


def parse_value_set(text: str) -> frozenset[int]:
    """Parse ``{a..b, c, ...}`` optionally followed by ``*k^e``."""
    m = _SCALE.match(text)
    if not m or not m.group("body").startswith("{"):
        raise ValueError(f"not a value set: {text!r}")
    factor = int(m.group("base")) ** int(m.group("exp")) if m.group("base") else 1
    out: set[int] = set()
    for part in m.group("body")[1:-1].split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, b = part.split("..")
            out.update(range(int(a), int(b) + 1))
        else:
            out.add(int(part))
    return frozenset(x * factor for x in out)


def parse_min_max(text: str) -> tuple[int, int]:
    m = _SCALE.match(text)
    if not m or not m.group("body").startswith("("):
        raise ValueError(f"not a (min, max) pair: {text!r}")
    factor = int(m.group("base")) ** int(m.group("exp")) if m.group("base") else 1
    a, b = (int(x) for x in m.group("body")[1:-1].split(","))
    return a * factor, b * factor


# -- spectrum and maximal determinants ---------------------------------------------

_SPECTRUM_TEXT = {
    1: "{1}",
    2: "{0, 1}",
    3: "{0, 1}",
    4: "{0..2}",
    5: "{0..3}",
    6: "{0..5}",
    7: "{0..9}",
    8: "{0..18, 20, 24, 32}",
    9: "{0..40, 42, 44, 45, 48, 56}",
    10: "{0..102, 104, 105, 108, 110, 112, 116, 117, 120, 125, 128, 144}",
    11: "{0..268, 270..276, 278..280, 282..286, 288, 291, 294..297, 304, 312, 315, 320}",
}

SPECTRUM: Mapping[int, frozenset[int]] = MappingProxyType(
    {n: parse_value_set(t) for n, t in _SPECTRUM_TEXT.items()}
)

# normalized maximal determinant |D(n)| / 2^(n-1)
MAXDET_NORMALIZED: Mapping[int, int] = MappingProxyType({
    1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 5, 7: 9,
    8: 4 * 2**3, 9: 7 * 2**3, 10: 18 * 2**3, 11: 40 * 2**3,
    12: 6 * 3**5, 13: 15 * 3**5, 14: 39 * 3**5, 15: 105 * 3**5,
    16: 8 * 4**7, 17: 20 * 4**7, 18: 68 * 4**7, 19: 833 * 4**6,
    20: 10 * 5**9, 21: 29 * 5**9,
})

MAXDET: Mapping[int, int] = MappingProxyType({n: v << (n - 1) for n, v in MAXDET_NORMALIZED.items()})

# (d, m_d, m_f) maximized over maxdet classes of each order
DEPTHS: Mapping[int, tuple[int, int, int]] = MappingProxyType({
    1: (1, 0, 1), 2: (1, 1, 1), 3: (1, 2, 2), 4: (1, 3, 2), 5: (1, 4, 3),
    6: (1, 5, 4), 7: (1, 6, 6), 8: (4, 4, 4), 9: (1, 8, 6), 10: (2, 8, 6),
    11: (3, 8, 7), 12: (5, 7, 6), 13: (6, 7, 7), 14: (7, 7, 7), 15: (8, 7, 7),
    16: (8, 8, 8), 17: (1, 16, 8), 18: (7, 11, 8), 19: (10, 9, 9),
    20: (10, 10, 8), 21: (10, 11, 10),
})

# ratios of the mean squared minor to m! (R_L) and to n^m / C(n, m) (R_H), as printed
MEAN_SQUARE_RATIOS: Mapping[int, Mapping[int, tuple[str, str]]] = MappingProxyType({
    13: {2: ("1.077", "0.994"), 3: ("1.259", "0.983"), 4: ("1.611", "0.968"),
         5: ("2.283", "0.949"), 6: ("3.625", "0.928"), 7: ("6.560", "0.904"),
         8: ("13.81", "0.879"), 9: ("34.80", "0.851"), 10: ("109.4", "0.823"),
         11: ("457.4", "0.795"), 12: ("2864", "0.765"), 13: ("35796", "0.736")},
    14: {2: ("1.067", "0.991"), 3: ("1.222", "0.973"), 4: ("1.516", "0.948"),
         5: ("2.054", "0.917"), 6: ("3.072", "0.882"), 7: ("5.139", "0.843"),
         8: ("9.773", "0.802"), 9: ("21.58", "0.759"), 10: ("56.93", "0.715"),
         11: ("187.0", "0.671"), 12: ("815.6", "0.627"), 13: ("5318", "0.584"),
         14: ("69137", "0.542")},
    15: {2: ("1.059", "0.988"), 3: ("1.195", "0.966"), 4: ("1.445", "0.935"),
         5: ("1.890", "0.897"), 6: ("2.694", "0.852"), 7: ("4.233", "0.804"),
         8: ("7.427", "0.752"), 9: ("14.79", "0.699"), 10: ("34.14", "0.645"),
         11: ("94.00", "0.592"), 12: ("321.7", "0.540"), 13: ("1461", "0.491"),
         14: ("9902", "0.444"), 15: ("133638", "0.399")},
})

# order-7 minors of an order-15 maxdet matrix vs. 41409225 random 7x7 samples:
# normalized value -> (observed multiplicity, random-model multiplicity)
MINOR_MULTIPLICITIES_15_7: Mapping[int, tuple[int, int]] = MappingProxyType({
    0: (12857784, 24030613), 1: (8402100, 11140444), 2: (10831128, 4662108),
    3: (3483909, 924336), 4: (3935280, 504938), 5: (622842, 76496),
    6: (927162, 55811), 7: (129576, 7769), 8: (201900, 6102), 9: (17544, 608),
})
RANDOM_MODEL_SAMPLES_15_7 = 41409225

# vanishing minors of order 4 in the four HT classes of order-16 Hadamard matrices
VANISHING_4_ORDER_16 = (1717520, 1712912, 1710608, 1709456)
# vanishing minors of order 2 in the three HT classes of order-11 maxdet matrices
VANISHING_2_ORDER_11 = (1391, 1389, 1401)


# -- per-class minor tables ----------------------------------------------------------

@dataclass(frozen=True)
class AppendixRow:
    lo: int
    hi: int
    values: str  # "full", "as:<label>", "{...}*k^e" or "(min, max)*k^e"
    max_flag: Optional[bool]
    full_flag: Optional[bool]


@dataclass(frozen=True)
class AppendixTable:
    number: int
    label: str  # e.g. "11(b)"
    n: int
    k: int
    d: int
    m_f: int
    rows: tuple[AppendixRow, ...]


def _r(ms, values, mx=None, full=None):
    if isinstance(ms, int):
        lo = hi = ms
    else:
        lo, hi = ms
    return AppendixRow(lo, hi, values, mx, full)


Y, N = True, False

_APPENDIX = [
    AppendixTable(6, "1", 1, 0, 1, 1, (_r(1, "{1}", Y, Y),)),
    AppendixTable(7, "2", 2, 0, 1, 1, (_r(2, "{1}", Y, N), _r(1, "{1}", Y, Y))),
    AppendixTable(8, "3", 3, 0, 1, 2, (_r(3, "{1}", Y, N), _r((1, 2), "full", Y, Y))),
    AppendixTable(9, "4", 4, 1, 1, 2, (
        _r(4, "{2}", Y, N), _r(3, "{1}", Y, N), _r((1, 2), "full", Y, Y))),
    AppendixTable(10, "5", 5, 1, 1, 3, (
        _r(5, "{3}", Y, N), _r(4, "{1,2}", Y, N), _r((1, 3), "full", Y, Y))),
    AppendixTable(11, "6", 6, 1, 1, 4, (
        _r(6, "{5}", Y, N), _r(5, "{1..3}", Y, N), _r((1, 4), "full", Y, Y))),
    AppendixTable(12, "7", 7, 1, 1, 6, (_r(7, "{9}", Y, N), _r((1, 6), "full", Y, Y))),
    AppendixTable(13, "8", 8, 2, 4, 4, (
        _r(8, "{2}*2^4", Y, N), _r(7, "{1}*2^3", N, N), _r(6, "{0,1}*2^2", N, N),
        _r(5, "{0,1}*2^1", N, N), _r((1, 4), "full", Y, Y))),
    AppendixTable(14, "9", 9, 2, 1, 6, (
        _r(9, "{7}*2^3", Y, N), _r(8, "{2,3,4,6,8}*2^2", Y, N), _r(7, "{0..4}*2^1", N, N),
        _r((1, 6), "full", Y, Y))),
    AppendixTable(15, "10", 10, 2, 2, 6, (
        _r(10, "{9}*2^4", Y, N), _r(9, "{3,6}*2^3", N, N), _r(8, "{0..5,8}*2^2", Y, N),
        _r(7, "{0..4}*2^1", N, N), _r((1, 6), "full", Y, Y))),
    AppendixTable(16, "11(a)", 11, 2, 4, 7, (
        _r(11, "{20}*2^4", Y, N), _r(10, "{0,2..8,10,12,16}*2^3", N, N),
        _r(9, "{0,2..4,6,8..10,12..24,26..33,36,40,48}", N, N),
        _r(8, "{0..18,20,24}", N, N), _r((1, 7), "full", Y, Y))),
    AppendixTable(17, "11(b)", 11, 2, 4, 7, (
        _r(11, "{20}*2^4", Y, N), _r(10, "{0,1,4..6,8..11,14,16}*2^3", N, N),
        _r(9, "{0,2..4,6,8..24,26..28,30..32,36,40,44,48}", N, N),
        _r(8, "{0..18,20,24}", N, N), _r((1, 7), "full", Y, Y))),
    AppendixTable(18, "11(c)", 11, 2, 3, 6, (
        _r(11, "{20}*2^4", Y, N), _r(10, "{4,6,8,12,16}*2^3", N, N),
        _r(9, "{0..4,6,8,12}*2^2", N, N), _r(8, "{0..8,12,16}*2^1", Y, N),
        _r(7, "{0..8}", N, N), _r((1, 6), "full", Y, Y))),
    AppendixTable(19, "12", 12, 3, 5, 6, (
        _r(12, "{2}*3^6", Y, N), _r(11, "{1}*3^5", N, N), _r(10, "{0,1}*3^4", N, N),
        _r(9, "{0,1}*3^3", N, N), _r(8, "{0..2}*3^2", N, N), _r(7, "{0..3}*3^1", Y, N),
        _r((1, 6), "full", Y, Y))),
    AppendixTable(20, "13", 13, 3, 6, 7, (
        _r(13, "{5}*3^6", Y, N), _r(12, "{2,3}*3^5", N, N), _r(11, "{0..3}*3^4", N, N),
        _r(10, "{0..4}*3^3", N, N), _r(9, "{0..5}*3^2", N, N), _r(8, "{0..6}*3^1", N, N),
        _r((1, 7), "full", Y, Y))),
    AppendixTable(21, "14", 14, 3, 7, 7, (
        _r(14, "{13}*3^6", Y, N), _r(13, "{4,6,7,9}*3^5", N, N),
        _r(12, "{0..7,9,10}*3^4", N, N), _r(11, "{0..9,11}*3^3", N, N),
        _r(10, "{0..13}*3^2", N, N), _r(9, "{0..15}*3^1", N, N),
        _r(8, "{0..18,20}", N, N), _r((1, 7), "full", Y, Y))),
    AppendixTable(22, "15", 15, 3, 8, 7, (
        _r(15, "{35}*3^6", Y, N), _r(14, "{7,8,12,14,17,18,21,23,27}*3^5", N, N),
        _r(13, "{0..21,23,24,26,27}*3^4", N, N), _r(12, "{0..22,24..27}*3^3", N, N),
        _r(11, "{0..29,31,35}*3^2", N, N), _r(10, "{0..36,39,40}*3^1", N, N),
        _r(9, "{0..36,38..40,42,44,45}", N, N), _r(8, "{0..18,20,24}", N, N),
        _r((1, 7), "full", Y, Y))),
    AppendixTable(23, "16(a)", 16, 4, 8, 5, (
        _r(16, "{2}*4^8", Y, N), _r(15, "{1}*4^7", N, N), _r(14, "{0,1}*4^6", N, N),
        _r(13, "{0,1}*4^5", N, N), _r(12, "{0..2}*4^4", N, N), _r(11, "{0..3}*4^3", N, N),
        _r(10, "{0..2}*2^5", N, N), _r(9, "{0..2}*2^4", N, N), _r(8, "{0..4}*2^3", Y, N),
        _r(7, "{0..2}*2^2", N, N), _r(6, "{0..2}*2^1", N, N), _r((1, 5), "full", Y, Y))),
    AppendixTable(24, "16(b)", 16, 4, 8, 6, (
        _r((11, 16), "as:16(a)"), _r(10, "{0..5}*4^2", N, N), _r(9, "{0..4}*2^3", N, N),
        _r(8, "{0..6,8}*2^2", Y, N), _r(7, "{0..4}*2^1", N, N), _r((1, 6), "full", Y, Y))),
    AppendixTable(25, "16(c)", 16, 4, 8, 7, (
        _r((10, 16), "as:16(b)"), _r(9, "{0..9}*4^1", N, N),
        _r(8, "{0..10,12,16}*2^1", Y, N), _r((1, 7), "full", Y, Y))),
    AppendixTable(26, "16(d)", 16, 4, 8, 8, (_r((9, 16), "as:16(c)"), _r((1, 8), "full", Y, Y))),
    AppendixTable(27, "17(a)", 17, 4, 1, 8, (
        _r(17, "{5}*4^8", Y, N), _r(16, "{2,3,8}*4^7", Y, N), _r(15, "{0..4}*4^6", N, N),
        _r(14, "{0..4}*4^5", N, N), _r(13, "{0..7}*4^4", N, N), _r(12, "{0..9}*4^3", N, N),
        _r(11, "{0..13,15}*4^2", N, N), _r(10, "{0..21,24,27}*4^1", N, N),
        _r(9, "{0..40,42,44,45,48}", N, N), _r((1, 8), "full", Y, Y))),
    AppendixTable(28, "17(b)", 17, 4, 1, 8, (
        _r((10, 17), "as:17(a)"), _r(9, "{0..22,24}*2^1", N, N), _r((1, 8), "full", Y, Y))),
    AppendixTable(29, "17(c)", 17, 4, 1, 7, (
        _r((11, 17), "as:17(a)"), _r(10, "{0..10,12}*2^3", N, N), _r(9, "{0..12}*2^2", N, N),
        _r(8, "{0..10,12,16}*2^1", Y, N), _r((1, 7), "full", Y, Y))),
    AppendixTable(30, "18(a)", 18, 4, 7, 8, (
        _r(18, "{17}*4^8", Y, N), _r(17, "{6,7,10,11}*4^7", N, N),
        _r(16, "{0..8,10,11,13}*4^6", N, N), _r(15, "{0..16}*4^5", N, N),
        _r(14, "{0..20}*4^4", N, N), _r(13, "{0..24,26,28}*4^3", N, N),
        _r(12, "{0..38,40,41,44,52}*4^2", N, N), _r(11, "{0..62,64,68,80}*4^1", Y, N),
        _r(10, "{0..94,96..98,100..102,104,108,112,128}", N, N),
        _r(9, "{0..40,42,44,45,48}", N, N), _r((1, 8), "full", Y, Y))),
    AppendixTable(31, "18(b)", 18, 4, 7, 8, (
        _r((14, 18), "as:18(a)"), _r(13, "{0..24,26,28,32}*4^3", N, N),
        _r(12, "{0..38,40,41,44,64}*4^2", N, N), _r(11, "{0..62,64,68,80}*4^1", Y, N),
        _r(10, "{0..52,54,56,64}*2^1", N, N), _r(9, "{0..40,42,44,45,48}", N, N),
        _r((1, 8), "full", Y, Y))),
    AppendixTable(32, "18(c)", 18, 4, 10, 8, (
        _r((14, 18), "as:18(a)"), _r(13, "{0..24,32}*4^3", N, N),
        _r(12, "{0..37,40,64}*4^2", N, N), _r(11, "{0..32}*2^3", N, N),
        _r(10, "{0..28,32}*2^2", N, N), _r(9, "{0..22,24}*2^1", N, N),
        _r((1, 8), "full", Y, Y))),
    AppendixTable(33, "19(a)", 19, 4, 10, 9, (
        _r(19, "(833,833)*4^6", Y, N), _r(18, "(140,784)*4^5", N, N),
        _r(17, "(0,672)*4^4", N, N), _r(16, "(0,676)*4^3", N, N),
        _r(15, "(0,1050)*4^2", N, N), _r(14, "(0,1470)*4^1", N, N),
        _r(13, "(0,1904)", N, N), _r(12, "(0,756)", N, N), _r(11, "(0,312)", N, N),
        _r(10, "(0,128)", N, N), _r((1, 9), "full", Y, Y))),
    AppendixTable(34, "19(b)", 19, 4, 10, 9, (
        _r(19, "(833,833)*4^6", Y, N), _r(18, "(168,616)*4^5", N, N),
        _r(17, "(0,672)*4^4", N, N), _r(16, "(0,740)*4^3", N, N),
        _r(15, "(0,1024)*4^2", N, N), _r(14, "(0,1536)*4^1", N, N),
        _r(13, "(0,2048)", N, N), _r(12, "(0,1024)", N, N), _r(11, "(0,288)", N, N),
        _r(10, "(0,128)", N, N), _r((1, 9), "full", Y, Y))),
    AppendixTable(35, "19(c)", 19, 4, 10, 9, (
        _r((14, 19), "as:19(b)"), _r(13, "(0,2560)", N, N), _r((1, 12), "as:19(b)"))),
    AppendixTable(36, "20(a)", 20, 5, 10, 8, (
        _r(20, "{2}*5^10", Y, N), _r(19, "{1}*5^9", N, N), _r(18, "{0,1}*5^8", N, N),
        _r(17, "{0,1}*5^7", N, N), _r(16, "{0..2}*5^6", N, N), _r(15, "{0..3}*5^5", N, N),
        _r(14, "{0..5}*5^4", N, N), _r(13, "{0..9}*5^3", N, N),
        _r(12, "{0..18,20,24,32}*5^2", N, N), _r(11, "{0..40,42,44,48}*5^1", N, N),
        _r(10, "{0..92,95,96,100,104,108,112,125,144}", Y, N),
        _r(9, "{0..40,42,44,48}", N, N), _r((1, 8), "full", Y, Y))),
    AppendixTable(37, "20(b)", 20, 5, 10, 8, (
        _r((12, 20), "as:20(a)"), _r(11, "{0..40,42,44,45,48}*5^1", N, N),
        _r(10, "{0..90,92,93,95..102,104,108,112,117,120,125,128,144}", Y, N),
        _r(9, "{0..40,42,44,45,48}", N, N), _r((1, 8), "full", Y, Y))),
    AppendixTable(38, "20(c)", 20, 5, 10, 8, (
        _r((11, 20), "as:20(b)"),
        _r(10, "{0..88,90,92,93,96,99,100,102,104,108,112,120,125,128,144}", Y, N),
        _r((1, 9), "as:20(b)"))),
    AppendixTable(39, "21(a)", 21, 5, 10, 9, (
        _r(21, "(29,29)*5^9", Y, N), _r(20, "(10,30)*5^8", N, N), _r(19, "(0,35)*5^7", N, N),
        _r(18, "(0,40)*5^6", N, N), _r(17, "(0,45)*5^5", N, N), _r(16, "(0,65)*5^4", N, N),
        _r(15, "(0,100)*5^3", N, N), _r(14, "(0,240)*5^2", N, N),
        _r(13, "(0,416)*5^1", N, N), _r(12, "(0,800)", N, N), _r(11, "(0,320)", Y, N),
        _r(10, "(0,144)", Y, N), _r((1, 9), "full", Y, Y))),
    AppendixTable(40, "21(b)", 21, 5, 10, 10, (
        _r((15, 21), "as:21(a)"), _r(14, "(0,216)*5^2", N, N), _r(13, "(0,400)*5^1", N, N),
        _r(12, "(0,800)", N, N), _r(11, "(0,320)", Y, N), _r((1, 10), "full", Y, Y))),
    AppendixTable(41, "21(c)", 21, 5, 11, 9, (
        _r((15, 21), "as:21(a)"), _r(14, "(0,200)*5^2", N, N), _r(13, "(0,400)*5^1", N, N),
        _r(12, "(0,800)", N, N), _r(11, "(0,304)", N, N), _r(10, "(0,144)", Y, N),
        _r((1, 9), "full", Y, Y))),
    AppendixTable(42, "21(d)", 21, 5, 10, 10, (
        _r((15, 21), "as:21(a)"), _r(14, "(0,240)*5^2", N, N), _r(13, "(0,416)*5^1", N, N),
        _r(12, "(0,800)", N, N), _r(11, "(0,320)", Y, N), _r((1, 10), "full", Y, Y))),
    AppendixTable(43, "21(e)", 21, 5, 11, 9, (
        _r((15, 21), "as:21(a)"), _r(14, "(0,212)*5^2", N, N), _r(13, "(0,368)*5^1", N, N),
        _r(12, "(0,800)", N, N), _r(11, "(0,288)", N, N), _r(10, "(0,144)", Y, N),
        _r((1, 9), "full", Y, Y))),
]

APPENDIX: Mapping[int, AppendixTable] = MappingProxyType({t.number: t for t in _APPENDIX})
_BY_LABEL = {t.label: t for t in _APPENDIX}


def appendix_table(key: Union[int, str]) -> AppendixTable:
    """Look up by table number (6..43) or class label such as ``"16(c)"``."""
    if isinstance(key, int):
        return APPENDIX[key]
    return _BY_LABEL[key]


def tables_for_order(n: int) -> list[AppendixTable]:
    return [t for t in _APPENDIX if t.n == n]


@dataclass(frozen=True)
class OrderEntry:
    """Resolved row of an appendix table for one minor order."""

    m: int
    values: Optional[frozenset[int]]  # None when only (min, max) is recorded
    min_max: tuple[int, int]
    max_flag: Optional[bool]
    full_flag: Optional[bool]


@lru_cache(maxsize=None)
def resolve_appendix(key: Union[int, str]) -> dict[int, OrderEntry]:
    """Expand a table into one entry per order ``m``, following ``as for`` references."""
    t = appendix_table(key)
    out: dict[int, OrderEntry] = {}
    for row in t.rows:
        if row.values.startswith("as:"):
            ref = resolve_appendix(row.values[3:])
            for m in range(row.lo, row.hi + 1):
                out[m] = ref[m]
            continue
        for m in range(row.lo, row.hi + 1):
            if row.values == "full":
                vals = SPECTRUM[m]
            elif row.values.startswith("{"):
                vals = parse_value_set(row.values)
            else:
                vals = None
            mm = (min(vals), max(vals)) if vals is not None else parse_min_max(row.values)
            out[m] = OrderEntry(m, vals, mm, row.max_flag, row.full_flag)
    missing = set(range(1, t.n + 1)) - set(out)
    if missing:
        raise ValueError(f"table {t.number} does not cover orders {sorted(missing)}")
    return out


def table_checksum() -> str:
    """Digest of the spectrum and maxdet tables, pinned by the test suite."""
    h = hashlib.sha256()
    for n in sorted(SPECTRUM):
        h.update(f"S{n}:{','.join(map(str, sorted(SPECTRUM[n])))};".encode())
    for n in sorted(MAXDET_NORMALIZED):
        h.update(f"D{n}:{MAXDET_NORMALIZED[n]};".encode())
    return h.hexdigest()


def ratio_interval(printed: str) -> tuple[Fraction, Fraction]:
    """Interval of values that display as ``printed`` (plus or minus one unit in the last digit)."""
    if "." in printed:
        unit = Fraction(1, 10 ** len(printed.split(".")[1]))
    else:
        unit = Fraction(1)
    v = Fraction(printed)
    return v - unit, v + unit
