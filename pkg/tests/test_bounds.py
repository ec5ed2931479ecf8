import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadminors import bounds
from hadminors.analysis import szollosi_check
from hadminors.catalog import paley_hadamard, sylvester
from hadminors.errors import CapacityError
from hadminors.minors import enumerate_minors_algD


def test_f_endpoints_and_domain():
    assert bounds.f(0.5) == pytest.approx(0.0, abs=1e-15)
    assert bounds.f(1.0) == 0.0
    assert bounds.f(0.0) == 0.0
    with pytest.raises(ValueError):
        bounds.f(1.5)
    with pytest.raises(ValueError):
        bounds.f_prime(1.0)


def test_x_max_is_root_of_derivative():
    xm = bounds.x_max()
    assert abs(bounds.f_prime(xm)) < 1e-10
    # independent root: bisect f' directly
    a, b = 0.6, 0.99
    for _ in range(200):
        c = (a + b) / 2
        if bounds.f_prime(c) > 0:
            a = c
        else:
            b = c
    assert xm == pytest.approx(a, abs=1e-12)
    assert 0.14 < bounds.f(xm) < 0.15
    assert bounds.z_max() == pytest.approx(2 * xm - 1)


@given(st.floats(0.51, 0.99))
def test_f_concave_and_derivative(x):
    h = 1e-6
    fd = (bounds.f(x + h) - bounds.f(x - h)) / (2 * h)
    assert fd == pytest.approx(bounds.f_prime(x), abs=1e-6)
    assert bounds.f(x) <= bounds.f(bounds.x_max()) + 1e-15
    assert bounds.f(x) > 0


def test_epsilon_series_matches_closed_form():
    for z in np.linspace(0.01, 0.67, 500):
        assert abs(bounds.epsilon(z) - bounds.epsilon_series(z)) <= 1e-10
    assert bounds.epsilon(bounds.z_max()) < 0.1803
    assert 2 - math.log(4) - bounds.epsilon(bounds.z_max()) > 0.4334
    with pytest.raises(ValueError):
        bounds.epsilon(0.0)


@pytest.mark.parametrize("n", [29, 100, 1000])
def test_excluded_interval_large_n(n):
    iv = bounds.excluded_interval(n)
    t = bounds.threshold(n)
    assert not iv.empty
    assert 0.5 < iv.x0 < bounds.x_max() < iv.x1 < 1
    assert bounds.f(iv.x0) == pytest.approx(t, abs=1e-10)
    assert bounds.f(iv.x1) == pytest.approx(t, abs=1e-10)
    assert iv.x1 > 1 - 3 / n
    assert n * iv.x0 < n / 2 + 5 * math.log(n)
    mid = np.linspace(iv.x0, iv.x1, 50)[1:-1]
    assert all(bounds.f(x) > t for x in mid)


def test_excluded_interval_29_orders():
    iv = bounds.excluded_interval(29)
    lo, hi = iv.orders()
    assert lo > 29 * iv.x0 and hi < 29 * iv.x1
    assert (lo - 1) <= 29 * iv.x0 and (hi + 1) >= 29 * iv.x1


@pytest.mark.parametrize("n", [8, 12, 16, 20, 24])
def test_excluded_interval_empty(n):
    iv = bounds.excluded_interval(n)
    assert iv.empty and iv.orders() is None


def test_excluded_interval_order_4():
    # threshold is 0, so the formula excludes all of (1/2, 1)
    assert bounds.threshold(4) == 0
    assert bounds.excluded_interval(4).orders() == (3, 3)


@pytest.mark.parametrize("n", [25, 26, 27, 28])
def test_excluded_interval_just_below_29(n):
    # the threshold already drops below max f here; see the decision log
    assert bounds.threshold(n) < bounds.f(bounds.x_max())
    assert not bounds.excluded_interval(n).empty


def test_depth3_inequality():
    assert [n for n in range(8, 2000) if not bounds.depth3_inequality_holds(n)][0] == 29
    assert all(bounds.depth3_inequality_holds(n) == (n <= 28) for n in range(8, 10001))
    # exact and log-space branches agree around the switch
    for n in range(380, 420):
        exact = 16 * n * (n - 3) ** (n - 3) <= 27 * n ** (n - 3)
        assert bounds.depth3_inequality_holds(n) == exact
    with pytest.raises(ValueError):
        bounds.depth3_inequality_holds(3)


def test_lowerbound_d():
    assert bounds.lowerbound_D(4) == 16
    assert bounds.lowerbound_D(8) == 4 * 8**3


def test_complementary_bound_values():
    assert bounds.complementary_bound(8, 7) == 512
    assert bounds.complementary_bound(8, 8) == 8**4
    assert bounds.complementary_bound(4, 3) == 4
    with pytest.raises(ValueError):
        bounds.complementary_bound(8, 3)
    with pytest.raises(CapacityError):
        bounds.complementary_bound(80, 50)


@pytest.mark.parametrize("H", [sylvester(2), sylvester(3), paley_hadamard(11)], ids=["h4", "h8", "p12"])
def test_complementary_bound_against_enumeration(H):
    n = H.n
    p = enumerate_minors_algD(H, range((n + 1) // 2, n + 1))
    for m in p.orders:
        raw = p.max_value(m) << (m - 1)
        assert raw <= bounds.complementary_bound(n, m)
    assert szollosi_check(H, orders=[n - 1]).ok


def test_lambda_prime_gap():
    assert bounds.lambda_prime_gap(3) == 2
    assert bounds.lambda_prime_gap(2) == 1
    assert bounds.lambda_prime_gap(20) == 4
    assert bounds.lambda_prime_gap(100) == 8
    assert bounds.lambda_prime_gap(1000) == 20
    assert bounds.lambda_prime_gap(1.5) == 0


def test_prime_gap_table_against_naive():
    t = bounds.PrimeGapTable(1 << 12)
    primes = [p for p in range(2, 1 << 12) if all(p % q for q in range(2, math.isqrt(p) + 1))]
    assert list(t.primes) == primes
    for x in range(2, 2000, 37):
        naive = max(b - a for a, b in zip(primes, primes[1:]) if a <= x)
        assert t.gap(x) == naive
    with pytest.raises(CapacityError):
        t.gap(4095)


def test_prime_gap_inequality():
    assert bounds.prime_gap_inequality(16, 8)
    assert all(bounds.prime_gap_inequality(100, m) for m in range(1, 101))
    assert not bounds.prime_gap_inequality(1000, 800)
    with pytest.raises(ValueError):
        bounds.prime_gap_inequality(16, 0)


def test_bounds_report_lines():
    lines = bounds.bounds_report(16).lines()
    assert "interval empty" in lines
    lines = bounds.bounds_report(29).lines()
    assert any(s.startswith("x0 = ") for s in lines)
    assert any(s.startswith("excluded orders: ") for s in lines)
    assert lines[-1].endswith("fails")
