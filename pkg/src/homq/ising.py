"""Complex-parameter Ising partition functions and their homomorphism gadget.

Weights are dimensionless: ``w(sigma) = exp(sum_e w_e s_u s_v + sum_v h_v s_v)``.
Matrix index 0 stands for spin -1 and index 1 for spin +1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import EngineConfig, resolve
from .errors import InstanceTooLargeError, OutsideZeroFreeRegionError
from .graph import Graph, build_graph
from .hom import (
    ApproxResult,
    RestrictedHomInstance,
    SymmetricMatrixAssignment,
    approx_hom_restricted,
)
from .regimes import polyregion_margin

_CHUNK = 1 << 16
_SPIN_SIGNS = np.array([[1.0, -1.0], [-1.0, 1.0]])


@dataclass(frozen=True, eq=False)
class IsingInstance:
    graph: Graph
    edge_weights: np.ndarray
    vertex_weights: np.ndarray

    def __post_init__(self):
        edge = np.array(self.edge_weights, dtype=np.complex128).reshape(-1)
        vert = np.array(self.vertex_weights, dtype=np.complex128).reshape(-1)
        if edge.size != self.graph.edge_count:
            raise ValueError(f"{edge.size} edge weights for {self.graph.edge_count} edges")
        if vert.size != self.graph.vertex_count:
            raise ValueError(f"{vert.size} vertex weights for {self.graph.vertex_count} vertices")
        edge.setflags(write=False)
        vert.setflags(write=False)
        object.__setattr__(self, "edge_weights", edge)
        object.__setattr__(self, "vertex_weights", vert)

    @classmethod
    def zero_field(cls, graph: Graph, edge_weights) -> "IsingInstance":
        return cls(graph, edge_weights, np.zeros(graph.vertex_count))


def ising_weight(inst: IsingInstance, sigma) -> complex:
    """``exp`` of the complex energy of one total spin configuration."""
    s = np.asarray(sigma, dtype=np.int64).reshape(-1)
    if s.size != inst.graph.vertex_count or not np.all(np.abs(s) == 1):
        raise ValueError("sigma must assign +1 or -1 to every vertex")
    ends = inst.graph.edge_endpoints
    energy = np.sum(inst.vertex_weights * s)
    if len(ends):
        energy = energy + np.sum(inst.edge_weights * s[ends[:, 0]] * s[ends[:, 1]])
    return complex(np.exp(energy))


def z_ising_exact(inst: IsingInstance, config: EngineConfig | None = None) -> complex:
    """Sum of :func:`ising_weight` over all ``2^|V|`` configurations."""
    cfg = resolve(config)
    n = inst.graph.vertex_count
    total = 1 << n
    if total > cfg.enumeration_guard:
        raise InstanceTooLargeError(f"2^{n} configurations exceed the guard {cfg.enumeration_guard}")
    ends = inst.graph.edge_endpoints
    shifts = np.arange(n, dtype=np.int64)
    result = 0j
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        spins = 2 * ((idx[:, None] >> shifts) & 1) - 1
        energy = spins @ inst.vertex_weights if n else np.zeros(idx.size, dtype=np.complex128)
        if len(ends):
            energy = energy + (spins[:, ends[:, 0]] * spins[:, ends[:, 1]]) @ inst.edge_weights
        result += complex(np.exp(energy).sum())
    return result


def ising_to_hom(inst: IsingInstance, config: EngineConfig | None = None) -> RestrictedHomInstance:
    """Gadget reduction: a pinned pendant per vertex carries its field.

    Pendant of vertex ``v`` is vertex ``n + v`` and its edge gets id
    ``|E| + v``; all pendants are pinned to index 2 (spin +1).  With
    ``drop_zero_field_pendants`` vertices whose field is exactly zero get no
    pendant, and the remaining pendants are numbered consecutively.
    """
    cfg = resolve(config)
    G = inst.graph
    n = G.vertex_count
    carriers = [
        v for v in range(n) if not (cfg.drop_zero_field_pendants and inst.vertex_weights[v] == 0)
    ]
    pairs = [(u, v) for _, u, v in G.edges]
    pairs += [(v, n + i) for i, v in enumerate(carriers)]
    G2 = build_graph(n + len(carriers), pairs)
    weights = np.concatenate([inst.edge_weights, inst.vertex_weights[carriers]])
    mats = np.exp(weights[:, None, None] * _SPIN_SIGNS[None, :, :])
    A = SymmetricMatrixAssignment(m=2, matrices=mats)
    return RestrictedHomInstance(G2, A, tuple(range(n, n + len(carriers))), 2)


def z_ising_approx(
    inst: IsingInstance,
    epsilon: float,
    *,
    force: bool = False,
    config: EngineConfig | None = None,
) -> ApproxResult:
    """Interpolation estimate of ``Z_Ising`` through :func:`ising_to_hom`.

    The instance must sit strictly inside the polyregion of radius
    ``delta_{D+1}``; the tight polyregion margin is used as the disc radius.
    """
    report = polyregion_margin(inst)
    if not report.inside and not force:
        raise OutsideZeroFreeRegionError(
            f"weights reach {report.margin:.6g}, not inside the zero-free region {report.threshold:.6g}",
            report,
        )
    hinst = ising_to_hom(inst, config)
    result = approx_hom_restricted(
        hinst, epsilon, delta_cap=report.margin if report.inside else None, force=force, config=config
    )
    return result
