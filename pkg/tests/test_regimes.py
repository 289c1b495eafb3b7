from __future__ import annotations

import math

import numpy as np
import pytest

from homq import (
    DeltaOutOfRangeError,
    IsingInstance,
    SymmetricMatrixAssignment,
    build_graph,
    delta_Delta,
    max_iqp_angle,
    polydisc_margin,
    polyregion_margin,
)
from homq.regimes import delta_Delta_grid


def test_single_degree_value_is_one_half():
    assert delta_Delta(1) == pytest.approx(0.5, abs=1e-12)


def test_values_decrease_with_degree():
    values = [delta_Delta(D) for D in range(1, 65)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_inverse_degree_scaling():
    scaled = [D * delta_Delta(D) for D in range(3, 65)]
    assert min(scaled) > 0.5


@pytest.mark.parametrize("D", range(3, 17))
def test_ternary_matches_dense_grid(D):
    assert abs(delta_Delta(D) - delta_Delta_grid(D)) < 1e-7


def test_degree_must_be_positive():
    with pytest.raises(ValueError):
        delta_Delta(0)


def test_polydisc_margin_examples():
    ones = SymmetricMatrixAssignment.uniform(3, np.ones((2, 2)))
    assert polydisc_margin(ones, 0.2).margin == 0
    mats = np.ones((2, 2, 2), dtype=complex)
    mats[1, 0, 0] = 1 + 0.2j
    report = polydisc_margin(SymmetricMatrixAssignment(2, mats), 0.3)
    assert report.margin == pytest.approx(0.2)
    assert report.inside
    assert report.worst_offender == "edge 1 entry (1,1)"


def test_boundary_counts_as_outside():
    d = delta_Delta(3)
    A = SymmetricMatrixAssignment.uniform(1, [[1 + d, 1 - d], [1 - d, 1 + d]])
    assert not polydisc_margin(A, d).inside


def test_polyregion_examples():
    G = build_graph(2, [(0, 1)])
    zero = IsingInstance(G, [0], [0, 0])
    assert polyregion_margin(zero).margin == 0
    assert polyregion_margin(zero).inside
    real = IsingInstance(G, [0.1], [0, 0])
    assert polyregion_margin(real).margin == pytest.approx(math.e**0.1 - 1, abs=1e-14)
    assert polyregion_margin(real).margin == pytest.approx(0.10517, abs=1e-5)
    imag = IsingInstance(G, [0.2j], [0.05j, 0])
    assert polyregion_margin(imag).margin == pytest.approx(2 * math.sin(0.1), abs=1e-12)
    assert polyregion_margin(imag).threshold == delta_Delta(2)


def test_angle_bound_examples():
    assert max_iqp_angle(2.0) == pytest.approx(math.pi)
    assert max_iqp_angle(0.13) == pytest.approx(0.13009, abs=1e-5)
    assert max_iqp_angle(1e-6) == pytest.approx(1e-6, rel=1e-9)
    for bad in (0.0, -1.0, 2.5):
        with pytest.raises(DeltaOutOfRangeError):
            max_iqp_angle(bad)


def test_tabulated_values_are_two_decimal_truncations():
    table = {3: 0.18, 4: 0.13, 5: 0.11, 6: 0.09}
    for D, value in table.items():
        assert math.floor(100 * delta_Delta(D)) / 100 == value
    # rounding would give 0.14 for D = 4, so the table truncates
    assert round(delta_Delta(4), 2) == 0.14
