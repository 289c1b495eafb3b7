from __future__ import annotations

import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homq import (
    NotNormalizedError,
    RatioOutOfRangeError,
    newton_power_sums,
    taylor_log_truncated,
    truncation_error_bound,
    truncation_order,
)
from homq.interp import certified_order, newton_power_sums_batch
from homq.oracles import power_sums_from_roots


def test_order_examples():
    assert truncation_order(10, 0.1, 0.5).order == 10
    assert truncation_order(1, 0.5, 0.5).order == 2
    assert truncation_order(1, 0.9, 0.0).order == 1


def test_order_rejects_ratio_outside_unit_interval():
    for bad in (1.0, 1.5, -0.1, float("nan")):
        with pytest.raises(RatioOutOfRangeError):
            truncation_order(3, 0.1, bad)


def test_error_bound_examples():
    assert truncation_error_bound(10, 10, 0.5) == pytest.approx(10 * 0.5**11 / (11 * 0.5))
    assert truncation_error_bound(10, 10, 0.5) == pytest.approx(0.000888, abs=1e-6)
    assert truncation_error_bound(1, 0, 0.5) == pytest.approx(1.0)


def test_order_meets_bound_once_log_term_is_large():
    for n in (5, 40):
        for eps in (0.1, 1e-3):
            for ratio in (0.1, 0.5, 0.9):
                M = truncation_order(n, eps, ratio).order
                assert truncation_error_bound(n, M, ratio) <= eps


def test_certified_order_always_meets_bound():
    assert truncation_error_bound(1, truncation_order(1, 0.5, 0.9).order, 0.9) > 0.5
    for n in (1, 5, 40):
        for eps in (0.5, 0.1, 1e-3):
            for ratio in (0.0, 0.1, 0.5, 0.9):
                plan = certified_order(n, eps, ratio)
                assert plan.order >= truncation_order(n, eps, ratio).order
                assert truncation_error_bound(n, plan.order, ratio) <= eps


def test_newton_linear_and_quadratic():
    # 1 - z/2 has its root at 2
    assert np.allclose(newton_power_sums([1, -0.5, 0, 0]), [0.5, 0.25, 0.125])
    # (1 - z/2)(1 - z/3)
    a = [1, -(1 / 2 + 1 / 3), 1 / 6]
    expected = [(1 / 2) ** j + (1 / 3) ** j for j in range(1, 5)]
    assert np.allclose(newton_power_sums(a + [0, 0]), expected)


def test_newton_requires_normalization():
    with pytest.raises(NotNormalizedError):
        newton_power_sums([2.0, 1.0])


def test_constant_polynomial_has_no_power_sums():
    assert np.all(newton_power_sums([1, 0, 0, 0]) == 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_newton_matches_roots(seed, degree):
    rng = np.random.default_rng(seed)
    radius = rng.uniform(1.2, 3.0, degree)
    roots = radius * np.exp(2j * np.pi * rng.random(degree))
    poly = np.poly(roots)[::-1]
    a = poly / poly[0]
    M = degree + 3
    prefix = np.zeros(M + 1, dtype=complex)
    prefix[: degree + 1] = a
    got = newton_power_sums(prefix)
    ref = power_sums_from_roots(prefix, M)
    assert np.max(np.abs(got - ref)) <= 1e-8 * np.max(np.abs(ref))


def test_degree_six_polynomial_against_roots(rng):
    roots = (1.5 + rng.random(6)) * np.exp(2j * np.pi * rng.random(6))
    a = np.poly(roots)[::-1]
    a = a / a[0]
    ref = power_sums_from_roots(a, 6)
    assert np.allclose(newton_power_sums(a), ref, rtol=1e-9)


def test_batch_rows_equal_single_rows(rng):
    a = rng.normal(size=(5, 7)) + 1j * rng.normal(size=(5, 7))
    a[:, 0] = 1
    a[:, 4:] = 0
    batch = newton_power_sums_batch(a)
    for row, out in zip(a, batch):
        assert np.allclose(newton_power_sums(row), out)


def test_taylor_recovers_log_inside_disc():
    roots = np.array([2.0, -3.0 + 1j, 2.5j])
    a = np.poly(roots)[::-1]
    a = a / a[0]
    M = 80
    prefix = np.zeros(M + 1, dtype=complex)
    prefix[: a.size] = a
    p = newton_power_sums(prefix)
    t = 0.7 + 0.3j
    value = np.polyval(a[::-1], t)
    assert abs(taylor_log_truncated(p, t) - cmath.log(value)) < 1e-10
    assert taylor_log_truncated([], t) == 0
