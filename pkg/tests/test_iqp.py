from __future__ import annotations

import math

import numpy as np
import pytest

from homq import (
    AngleOutOfRangeError,
    DuplicateEdgeRowError,
    GraphXProgram,
    OutsideZeroFreeRegionError,
    RowWeightUnsupportedError,
    XProgram,
    build_graph,
    delta_Delta,
    max_iqp_angle,
    output_probability_zero,
    psi_statevector,
    psi_via_ising,
    xprogram_to_graph,
)
from homq.oracles import InstanceGenerator, sample_instances

from conftest import within_guarantee


def test_program_conversion():
    gxp = xprogram_to_graph(XProgram([[1, 1], [1, 0]], 0.3))
    assert gxp.graph.edges == ((0, 0, 1),)
    assert list(gxp.edge_angles) == [0.3]
    assert list(gxp.vertex_angles) == [0.3, 0.0]
    single = xprogram_to_graph(XProgram([[1]], math.pi / 2))
    assert list(single.vertex_angles) == [math.pi / 2]


def test_program_conversion_errors():
    with pytest.raises(RowWeightUnsupportedError):
        xprogram_to_graph(XProgram([[1, 1, 1]], 0.1))
    with pytest.raises(RowWeightUnsupportedError):
        xprogram_to_graph(XProgram([[0, 0]], 0.1))
    with pytest.raises(DuplicateEdgeRowError):
        xprogram_to_graph(XProgram([[1, 1], [1, 1]], 0.1))
    with pytest.raises(AngleOutOfRangeError):
        xprogram_to_graph(XProgram([[1], [1]], 2.0))
    with pytest.raises(AngleOutOfRangeError):
        XProgram([[1]], 4.0)


def test_repeated_vertex_rows_accumulate():
    gxp = xprogram_to_graph(XProgram([[1, 0], [1, 0], [0, 1]], 0.4))
    assert gxp.vertex_angles[0] == pytest.approx(0.8)


def test_closed_forms():
    vertex = GraphXProgram(build_graph(1, []), [], [0.7])
    edge = GraphXProgram(build_graph(2, [(0, 1)]), [0.45], [0, 0])
    for gxp, expected in ((vertex, math.cos(0.7)), (edge, math.cos(0.45))):
        assert psi_via_ising(gxp).value == pytest.approx(expected, abs=1e-14)
        assert psi_statevector(gxp).value == pytest.approx(expected, abs=1e-14)
        assert output_probability_zero(gxp) == pytest.approx(expected**2)
    half = GraphXProgram(build_graph(1, []), [], [math.pi / 2])
    assert abs(psi_statevector(half).value) < 1e-15
    zero = GraphXProgram(build_graph(3, [(0, 1), (1, 2)]), [0, 0], [0, 0, 0])
    assert psi_statevector(zero).value == 1
    assert output_probability_zero(zero, "statevector") == 1


def test_identity_and_unitarity():
    gen = InstanceGenerator(seed=31, max_vertices=8, full_range=True)
    for gxp in sample_instances(gen, "iqp", 20):
        a = psi_via_ising(gxp).value
        b = psi_statevector(gxp).value
        assert abs(a - b) < 1e-10
        assert abs(a) <= 1 + 1e-9


def test_gate_order_independence(rng):
    gen = InstanceGenerator(seed=32, max_vertices=7, full_range=True)
    for gxp in sample_instances(gen, "iqp", 5):
        terms = [("edge", e) for e in range(gxp.graph.edge_count)]
        terms += [("vertex", v) for v in range(gxp.graph.vertex_count)]
        base = psi_statevector(gxp).value
        shuffled = [terms[i] for i in rng.permutation(len(terms))]
        assert abs(psi_statevector(gxp, shuffled).value - base) < 1e-12


def test_approx_mode_within_guarantee():
    gen = InstanceGenerator(seed=33, max_vertices=8, max_degree=3, max_extra_edges=2)
    for gxp in sample_instances(gen, "iqp", 6):
        amp = psi_via_ising(gxp, "approx", 1e-2)
        assert amp.method == "via_ising_approx"
        assert within_guarantee(amp.value, psi_statevector(gxp).value, 1e-2)
        p = output_probability_zero(gxp, "approx", 1e-2)
        assert abs(math.log(p / abs(psi_statevector(gxp).value) ** 2)) <= 2e-2


def test_approx_mode_rejects_large_angles():
    bound = max_iqp_angle(delta_Delta(2))
    gxp = GraphXProgram(build_graph(2, [(0, 1)]), [bound * 1.01], [0, 0])
    with pytest.raises(OutsideZeroFreeRegionError):
        psi_via_ising(gxp, "approx", 1e-2)
    with pytest.raises(ValueError):
        psi_via_ising(gxp, "approx")


def test_angles_validated():
    with pytest.raises(AngleOutOfRangeError):
        GraphXProgram(build_graph(2, [(0, 1)]), [3.5], [0, 0])
    np.testing.assert_equal(GraphXProgram(build_graph(1, []), [], [-math.pi]).vertex_angles, [-math.pi])
