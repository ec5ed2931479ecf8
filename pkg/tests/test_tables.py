import math

import pytest

from hadminors.tables import (
    APPENDIX,
    DEPTHS,
    MAXDET,
    MAXDET_NORMALIZED,
    MEAN_SQUARE_RATIOS,
    MINOR_MULTIPLICITIES_15_7,
    RANDOM_MODEL_SAMPLES_15_7,
    SPECTRUM,
    appendix_table,
    parse_min_max,
    parse_value_set,
    ratio_interval,
    resolve_appendix,
    table_checksum,
    tables_for_order,
)

FROZEN_CHECKSUM = "ac021a1bbbad3f0b03b04ccef5e743506ab22a5c1c7aaebdf22343efb976dae8"


def test_checksum_frozen():
    assert table_checksum() == FROZEN_CHECKSUM


def test_notation():
    assert parse_value_set("{0..3, 5}") == {0, 1, 2, 3, 5}
    assert parse_value_set("{2,3}*3^5") == {2 * 243, 3 * 243}
    assert parse_value_set("{1}") == {1}
    assert parse_min_max("(0,416)*5^1") == (0, 2080)
    with pytest.raises(ValueError):
        parse_value_set("(0, 1)")
    with pytest.raises(ValueError):
        parse_min_max("{0}")


def test_spectrum_examples():
    assert SPECTRUM[4] == {0, 1, 2}
    assert SPECTRUM[8] == set(range(19)) | {20, 24, 32}
    assert len(SPECTRUM[11]) == 269 + 7 + 3 + 5 + 1 + 1 + 4 + 1 + 1 + 1 + 1


def test_spectrum_max_is_maxdet():
    for n, s in SPECTRUM.items():
        assert max(s) == MAXDET_NORMALIZED[n]


def test_maxdet_table():
    assert MAXDET_NORMALIZED[13] == 3645 and MAXDET_NORMALIZED[21] == 56640625
    for n, D in MAXDET.items():
        assert D == MAXDET_NORMALIZED[n] << (n - 1)
        assert D * D <= n**n
        if n in (1, 2) or n % 4 == 0:
            assert D * D == n**n


@pytest.mark.parametrize("number", sorted(APPENDIX))
def test_appendix_tables_resolve(number):
    t = appendix_table(number)
    rows = resolve_appendix(number)
    assert set(rows) == set(range(1, t.n + 1))
    assert t.k == t.n // 4
    assert rows[t.n].min_max == (MAXDET_NORMALIZED[t.n],) * 2
    for m, e in rows.items():
        lo, hi = e.min_max
        assert hi <= MAXDET_NORMALIZED[m] or m > 21
        if e.values is not None:
            assert e.values <= set(range(hi + 1))
            if m in SPECTRUM:
                assert e.values <= SPECTRUM[m]
                assert e.full_flag in (None, e.values == SPECTRUM[m])
            if e.max_flag is not None:
                assert e.max_flag == (MAXDET_NORMALIZED[m] in e.values)


@pytest.mark.parametrize("number", sorted(APPENDIX))
def test_appendix_depths_consistent(number):
    t = appendix_table(number)
    rows = resolve_appendix(number)
    m_d = t.n - t.d
    if m_d:
        assert rows[m_d].max_flag is not False
        assert rows[m_d].min_max[1] == MAXDET_NORMALIZED[m_d]
    for m in range(m_d + 1, t.n):
        assert rows[m].min_max[1] < MAXDET_NORMALIZED[m]
    assert rows[t.m_f].full_flag is True
    if t.m_f + 1 in SPECTRUM and t.m_f + 1 <= t.n:
        assert rows[t.m_f + 1].full_flag is not True


def test_depth_table_is_best_over_classes():
    for n, (d, m_d, m_f) in DEPTHS.items():
        classes = tables_for_order(n)
        assert d + m_d == n
        assert max(t.n - t.d for t in classes) == m_d
        assert max(t.m_f for t in classes) == m_f


def test_lookup_by_label():
    assert appendix_table("16(c)").number == 25
    assert resolve_appendix("16(d)")[16] == resolve_appendix("16(a)")[16]


def test_mean_square_table_shape():
    for n, rows in MEAN_SQUARE_RATIOS.items():
        assert sorted(rows) == list(range(2, n + 1))
        highs = [float(rows[m][1]) for m in range(2, n + 1)]
        assert highs == sorted(highs, reverse=True)


def test_ratio_interval():
    lo, hi = ratio_interval("1.077")
    assert float(lo) == pytest.approx(1.076) and float(hi) == pytest.approx(1.078)
    lo, hi = ratio_interval("35796")
    assert (lo, hi) == (35795, 35797)


def test_table5_totals():
    obs = sum(o for o, _ in MINOR_MULTIPLICITIES_15_7.values())
    rnd = sum(r for _, r in MINOR_MULTIPLICITIES_15_7.values())
    assert obs <= math.comb(15, 7) ** 2 == RANDOM_MODEL_SAMPLES_15_7
    assert rnd <= RANDOM_MODEL_SAMPLES_15_7
