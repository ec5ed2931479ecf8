import json
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import brute_profile
from hadminors.catalog import paley_hadamard, representative, sylvester
from hadminors.errors import CapacityError
from hadminors.matrix import SignMatrix, max_normalized
from hadminors.minors import (
    MinorProfile,
    enumerate_minors,
    enumerate_minors_algA,
    enumerate_minors_algD,
    merge_profiles,
    minor_table,
)


def sign_matrices(lo=1, hi=8):
    return st.integers(lo, hi).flatmap(
        lambda n: arrays(np.int8, (n, n), elements=st.sampled_from([-1, 1])).map(SignMatrix)
    )


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_matches_bruteforce(n, use_backend, rng):
    for _ in range(3):
        A = SignMatrix(rng.choice([-1, 1], size=(n, n)))
        want = brute_profile(A)
        assert enumerate_minors_algD(A).counts == want
        assert enumerate_minors_algA(A).counts == want


def test_h4(use_backend):
    for p in (enumerate_minors_algA(sylvester(2)), enumerate_minors_algD(sylvester(2))):
        assert p.counts[4] == {2: 1}
        assert p.counts[3] == {1: 16}
        assert set(p.counts[2]) == {0, 1} and set(p.counts[1]) == {1}


def test_one_by_one():
    p = enumerate_minors_algA(SignMatrix([[1]]))
    assert p.counts == {1: {1: 1}} and p.sum_squares == {1: 1}


def test_h8_high_orders(use_backend):
    p = enumerate_minors_algD(sylvester(3), orders=range(5, 9))
    assert [p.values(m) for m in (5, 6, 7, 8)] == [[0, 2], [0, 4], [8], [32]]
    for m in range(5, 9):
        assert p.total(m) == comb(8, m) ** 2


def test_paley12_order11():
    p = enumerate_minors_algD(paley_hadamard(11), orders=[11])
    assert p.counts[11] == {243: 144}


def test_order13_order12():
    p = enumerate_minors_algD(representative(13), orders=[12])
    assert set(p.counts[12]) == {2 * 243, 3 * 243}


@given(sign_matrices(1, 9))
def test_conservation_and_ceiling(A):
    p = enumerate_minors_algD(A)
    n = A.n
    assert sum(p.total(m) for m in p.orders) == comb(2 * n, n) - 1
    for m in p.orders:
        assert p.total(m) == comb(n, m) ** 2
        assert p.max_value(m) <= max_normalized(m)
        assert p.sum_squares[m] == sum(c * (v << (m - 1)) ** 2 for v, c in p.counts[m].items())


@given(sign_matrices(2, 8))
def test_alg_a_equals_alg_d(A):
    assert enumerate_minors_algA(A) == enumerate_minors_algD(A)


def test_merge_identity_and_partition_independence():
    H = sylvester(3)
    p1 = enumerate_minors_algD(H, workers=1)
    assert merge_profiles([p1]) == p1
    assert enumerate_minors_algD(H, workers=2) == p1
    assert enumerate_minors_algD(H, workers=4) == p1
    parts = [enumerate_minors_algD(H, orders=[m]) for m in range(1, 9)]
    assert merge_profiles(parts[::-1]) == p1


def test_workers_bit_identical_order12():
    H = paley_hadamard(11)
    assert enumerate_minors_algD(H, workers=1).to_json() == enumerate_minors_algD(H, workers=8).to_json()


def test_merge_mismatch():
    with pytest.raises(ValueError):
        merge_profiles([MinorProfile(3), MinorProfile(4)])
    with pytest.raises(ValueError):
        merge_profiles([])


def test_serialization_roundtrip():
    p = enumerate_minors_algD(sylvester(2))
    d = json.loads(p.to_json())
    assert d["order"] == 4
    assert d["per_order"][3] == {"m": 4, "values": [[2, 1]], "sum_squares": 256}
    assert MinorProfile.from_json(p.to_json()) == p
    lines = p.to_csv().splitlines()
    assert lines[0] == "m,normalized,multiplicity"
    assert "4,2,1" in lines


def test_order_validation():
    with pytest.raises(ValueError):
        enumerate_minors_algD(sylvester(2), orders=[5])
    with pytest.raises(ValueError):
        enumerate_minors_algD(sylvester(2), workers=0)
    with pytest.raises(ValueError):
        enumerate_minors(sylvester(2), alg="C")


def test_memory_cap():
    with pytest.raises(CapacityError):
        enumerate_minors_algD(sylvester(4), memory_cap=1000)


def test_alg_a_order_cap():
    with pytest.raises(CapacityError):
        enumerate_minors_algA(SignMatrix(np.ones((26, 26))), orders=[1])


def test_callback_and_progress():
    H = sylvester(3)
    blocks = {}
    seen = []

    def on_minors(m, lo, block):
        blocks.setdefault(m, {})[lo] = block

    p = enumerate_minors_algD(H, orders=[3, 4], workers=2, on_minors=on_minors,
                              progress=lambda m, done, total: seen.append((m, done, total)))
    assert p == enumerate_minors_algD(H, orders=[3, 4])
    for m in (3, 4):
        full = np.concatenate([blocks[m][lo] for lo in sorted(blocks[m])])
        assert np.array_equal(full, minor_table(H, m))
        assert [s for s in seen if s[0] == m][-1] == (m, comb(8, m), comb(8, m))


def test_minor_table_shape():
    T = minor_table(sylvester(2), 2)
    assert T.shape == (6, 6)
    assert set(np.abs(T).ravel().tolist()) == {0, 2}
