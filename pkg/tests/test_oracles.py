from __future__ import annotations

import numpy as np
import pytest

from homq import (
    InstanceTooLargeError,
    RestrictedHomInstance,
    SymmetricMatrixAssignment,
    build_graph,
    hom_restricted_exact,
    matrices_at,
    max_degree,
    polyregion_margin,
)
from homq.graph import is_connected_subset
from homq.oracles import InstanceGenerator, full_polynomial_coefficients, sample_instances

from conftest import uniform_instance


def test_edgeless_polynomial_is_one():
    inst = RestrictedHomInstance(build_graph(3, []), SymmetricMatrixAssignment(2, np.zeros((0, 2, 2))))
    assert list(full_polynomial_coefficients(inst)) == [1]


def test_single_edge_uniform_entries():
    a = 1.3 - 0.2j
    inst = uniform_instance(2, [(0, 1)], np.full((2, 2), a))
    assert np.allclose(full_polynomial_coefficients(inst), [1, a - 1])


def test_oracle_edge_limit():
    inst = uniform_instance(16, [(i, i + 1) for i in range(15)], np.ones((2, 2)))
    with pytest.raises(InstanceTooLargeError):
        full_polynomial_coefficients(inst)


def test_dual_path_evaluation():
    gen = InstanceGenerator(seed=41, max_vertices=6, max_degree=4, radius_fraction=1.0)
    for inst in sample_instances(gen, "hom", 12):
        coeffs = full_polynomial_coefficients(inst)
        scale = inst.m ** inst.free_count
        for z in (0, 1, 0.5j):
            moved = RestrictedHomInstance(inst.graph, matrices_at(inst.matrices, z), inst.pinned, inst.pin_index)
            direct = hom_restricted_exact(moved) / scale
            series = np.polyval(coeffs[::-1], z)
            assert abs(series - direct) <= 1e-10 * max(1.0, abs(direct))


def test_sampling_is_deterministic():
    gen = InstanceGenerator(seed=42)
    for kind in ("hom", "ising", "iqp"):
        a = sample_instances(gen, kind, 5)
        b = sample_instances(gen, kind, 5)
        for x, y in zip(a, b):
            assert x.graph.edges == y.graph.edges
            for name in ("matrices", "edge_weights", "edge_angles"):
                if hasattr(x, name):
                    lhs = getattr(x, name)
                    rhs = getattr(y, name)
                    lhs = getattr(lhs, "matrices", lhs)
                    rhs = getattr(rhs, "matrices", rhs)
                    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("cap", [1, 2, 3, 4])
def test_sampled_graphs_obey_caps_and_connect(cap):
    gen = InstanceGenerator(seed=43, max_vertices=10, max_degree=cap)
    for inst in sample_instances(gen, "hom", 40):
        assert max_degree(inst.graph) <= cap
        assert is_connected_subset(inst.graph, range(inst.graph.vertex_count))


def test_sampled_ising_instances_inside_region():
    gen = InstanceGenerator(seed=44, max_vertices=8, max_degree=3, radius_fraction=0.9)
    for inst in sample_instances(gen, "ising", 50):
        report = polyregion_margin(inst)
        assert report.inside
        assert report.margin <= 0.9 * report.threshold + 1e-15 or max_degree(inst.graph) < 3


def test_sampled_hom_entries_inside_disc():
    from homq import delta_Delta, polydisc_margin

    gen = InstanceGenerator(seed=45, max_vertices=8, max_degree=4, radius_fraction=0.9)
    for inst in sample_instances(gen, "hom", 50):
        threshold = delta_Delta(max(1, max_degree(inst.graph)))
        assert polydisc_margin(inst.matrices, threshold).margin <= 0.9 * threshold


def test_unknown_kind():
    with pytest.raises(ValueError):
        sample_instances(InstanceGenerator(seed=1), "potts", 1)
