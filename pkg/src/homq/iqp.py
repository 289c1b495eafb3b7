"""Graph-induced X-programs and their all-zeros output amplitude.

Angles are in radians.  The circuit applied to ``|0...0>`` is
``exp(i sum_e w_e X_u X_v + i sum_v h_v X_v)``; qubit ``v`` is bit ``v`` of
the basis index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .config import EngineConfig
from .errors import (
    AngleOutOfRangeError,
    DuplicateEdgeRowError,
    InstanceTooLargeError,
    RowWeightUnsupportedError,
)
from .graph import Graph, build_graph
from .ising import IsingInstance, z_ising_approx, z_ising_exact

STATEVECTOR_MAX_QUBITS = 20
_ANGLE_TOL = 1e-12

Method = Literal["via_ising_exact", "via_ising_approx", "statevector"]


def _check_angle(theta: float, what: str) -> float:
    theta = float(theta)
    if not -math.pi - _ANGLE_TOL <= theta <= math.pi + _ANGLE_TOL:
        raise AngleOutOfRangeError(f"{what} angle {theta!r} outside [-pi, pi]")
    return theta


@dataclass(frozen=True, eq=False)
class XProgram:
    """Binary term matrix (rows = terms, columns = qubits) with one shared angle."""

    matrix: np.ndarray
    theta: float

    def __post_init__(self):
        P = np.array(self.matrix, dtype=np.int64)
        if P.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        if not np.all((P == 0) | (P == 1)):
            raise ValueError("matrix entries must be 0 or 1")
        _check_angle(self.theta, "program")
        P.setflags(write=False)
        object.__setattr__(self, "matrix", P)


@dataclass(frozen=True, eq=False)
class GraphXProgram:
    graph: Graph
    edge_angles: np.ndarray
    vertex_angles: np.ndarray

    def __post_init__(self):
        edge = np.array(self.edge_angles, dtype=np.float64).reshape(-1)
        vert = np.array(self.vertex_angles, dtype=np.float64).reshape(-1)
        if edge.size != self.graph.edge_count or vert.size != self.graph.vertex_count:
            raise ValueError("one angle per edge and per vertex is required")
        for e, w in enumerate(edge):
            _check_angle(w, f"edge {e}")
        for v, h in enumerate(vert):
            _check_angle(h, f"vertex {v}")
        edge.setflags(write=False)
        vert.setflags(write=False)
        object.__setattr__(self, "edge_angles", edge)
        object.__setattr__(self, "vertex_angles", vert)

    def to_ising(self) -> IsingInstance:
        """The purely imaginary Ising instance ``(i w, i h)``."""
        return IsingInstance(self.graph, 1j * self.edge_angles, 1j * self.vertex_angles)


@dataclass(frozen=True)
class Amplitude:
    value: complex
    method: Method
    epsilon: float | None = None
    order: int | None = None
    guarantee: bool = True


def xprogram_to_graph(xp: XProgram) -> GraphXProgram:
    """Rows of weight 2 become edges, rows of weight 1 add to vertex angles."""
    P = xp.matrix
    n = P.shape[1]
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    fields = [0.0] * n
    for r, row in enumerate(P):
        support = [int(c) for c in np.flatnonzero(row)]
        if len(support) == 2:
            pair = (support[0], support[1])
            if pair in seen:
                raise DuplicateEdgeRowError(f"row {r} repeats the pair {pair}")
            seen.add(pair)
            pairs.append(pair)
        elif len(support) == 1:
            v = support[0]
            fields[v] += xp.theta
            _check_angle(fields[v], f"accumulated vertex {v}")
        else:
            raise RowWeightUnsupportedError(f"row {r} has Hamming weight {len(support)}")
    G = build_graph(n, pairs)
    return GraphXProgram(G, [xp.theta] * len(pairs), fields)


def psi_via_ising(
    gxp: GraphXProgram,
    mode: Literal["exact", "approx"] = "exact",
    epsilon: float | None = None,
    *,
    force: bool = False,
    config: EngineConfig | None = None,
) -> Amplitude:
    """``2^{-|V|} Z_Ising(G; i w, i h)``."""
    inst = gxp.to_ising()
    scale = 2.0 ** (-gxp.graph.vertex_count)
    if mode == "exact":
        return Amplitude(z_ising_exact(inst, config) * scale, "via_ising_exact")
    if mode != "approx":
        raise ValueError(f"mode must be 'exact' or 'approx', got {mode!r}")
    if epsilon is None:
        raise ValueError("approx mode needs epsilon")
    res = z_ising_approx(inst, epsilon, force=force, config=config)
    return Amplitude(
        res.value * scale, "via_ising_approx", epsilon, res.order, res.guarantee
    )


def _apply_pair(state: np.ndarray, flip: int, theta: float) -> np.ndarray:
    partner = np.arange(state.size) ^ flip
    return math.cos(theta) * state + 1j * math.sin(theta) * state[partner]


def psi_statevector(
    gxp: GraphXProgram, order: Sequence[tuple[str, int]] | None = None
) -> Amplitude:
    """Gate-by-gate simulation; ``order`` optionally permutes the terms,
    given as ``("edge", id)`` / ``("vertex", id)`` pairs."""
    G = gxp.graph
    n = G.vertex_count
    if n > STATEVECTOR_MAX_QUBITS:
        raise InstanceTooLargeError(f"{n} qubits exceed the statevector limit {STATEVECTOR_MAX_QUBITS}")
    if order is None:
        order = [("edge", e) for e in range(G.edge_count)] + [("vertex", v) for v in range(n)]
    ends = G.edge_endpoints
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    for kind, i in order:
        if kind == "edge":
            u, v = ends[i]
            state = _apply_pair(state, (1 << int(u)) | (1 << int(v)), gxp.edge_angles[i])
        else:
            state = _apply_pair(state, 1 << int(i), gxp.vertex_angles[i])
    return Amplitude(complex(state[0]), "statevector")


def output_probability_zero(
    gxp: GraphXProgram,
    mode: Literal["exact", "approx", "statevector"] = "exact",
    epsilon: float | None = None,
    *,
    force: bool = False,
    config: EngineConfig | None = None,
) -> float:
    """``|psi|^2``; an approx-mode amplitude within ``e^{+-eps}`` gives ``e^{+-2 eps}`` here."""
    if mode == "statevector":
        amp = psi_statevector(gxp)
    else:
        amp = psi_via_ising(gxp, mode, epsilon, force=force, config=config)
    return float(abs(amp.value) ** 2)
