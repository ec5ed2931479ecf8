import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadminors.combinatorics import (
    binomial_table,
    child_matrix,
    colex_rank,
    colex_subsets,
    colex_unrank,
    complement,
    complement_ranks,
    level_tables,
    split_range,
    subset_matrix,
)


def test_extremes():
    assert colex_rank({0, 1}, 4) == 0
    assert colex_rank({2, 3}, 4) == 5


def test_roundtrip_all_12_choose_6():
    seen = set()
    for r in range(comb(12, 6)):
        s = colex_unrank(r, 6, 12)
        assert colex_rank(s, 12) == r
        seen.add(s)
    assert len(seen) == 924


def test_colex_order_is_monotone():
    # colex: compare by largest element first
    subs = list(colex_subsets(7, 3))
    keys = [tuple(reversed(s)) for s in subs]
    assert keys == sorted(keys)
    assert [colex_rank(s) for s in subs] == list(range(comb(7, 3)))


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_rank_unrank_property(nj):
    n, j = nj
    total = comb(n, j)
    for r in {0, total // 2, total - 1}:
        assert colex_rank(colex_unrank(r, j, n), n) == r


def test_errors():
    with pytest.raises(ValueError):
        colex_unrank(6, 2, 4)
    with pytest.raises(ValueError):
        colex_rank({4}, 4)
    with pytest.raises(ValueError):
        colex_unrank(-1, 2)


def test_subset_and_child_tables():
    n = 6
    for j in range(1, n + 1):
        S = subset_matrix(n, j)
        assert S.shape == (comb(n, j), j)
        for r, s in enumerate(S):
            assert colex_rank(s) == r
        if j >= 2:
            ch = child_matrix(n, j)
            for r, s in enumerate(S):
                for p in range(j):
                    rest = [x for i, x in enumerate(s) if i != p]
                    assert ch[r, p] == colex_rank(rest)


def test_complement_ranks():
    n, j = 7, 3
    cr = complement_ranks(n, j)
    for r, s in enumerate(subset_matrix(n, j)):
        assert colex_unrank(int(cr[r]), n - j) == complement(s, n)


def test_level_tables_layout():
    elems, childs, offsets = level_tables(5)
    for j in range(1, 6):
        assert offsets[j + 1] - offsets[j] == j * comb(5, j)


def test_binomial_table():
    B = binomial_table(10)
    for n, k in itertools.product(range(11), range(11)):
        assert B[n, k] == comb(n, k)


@given(st.integers(0, 10**6), st.integers(1, 64))
def test_split_range_partitions(total, parts):
    chunks = split_range(total, parts)
    if total == 0:
        assert chunks == []
        return
    assert chunks[0][0] == 0 and chunks[-1][1] == total
    assert all(a[1] == b[0] for a, b in zip(chunks, chunks[1:]))
    sizes = [b - a for a, b in chunks]
    assert max(sizes) - min(sizes) <= 1
