from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from homq import RestrictedHomInstance, SymmetricMatrixAssignment, build_graph


def within_guarantee(approx: complex, exact: complex, eps: float) -> bool:
    ratio = approx / exact
    return abs(math.log(abs(ratio))) <= eps and abs(cmath.phase(ratio)) <= eps


def log_ratio(approx: complex, exact: complex) -> complex:
    ratio = approx / exact
    return complex(math.log(abs(ratio)), cmath.phase(ratio))


def uniform_instance(n, pairs, matrix, pinned=(), k=1) -> RestrictedHomInstance:
    G = build_graph(n, pairs)
    A = SymmetricMatrixAssignment.uniform(G.edge_count, matrix)
    return RestrictedHomInstance(G, A, pinned, k)


def rel_err(got, ref) -> float:
    got, ref = np.asarray(got), np.asarray(ref)
    scale = float(np.max(np.abs(ref))) if ref.size else 0.0
    return float(np.max(np.abs(got - ref))) / max(scale, 1e-300) if got.size else 0.0


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
