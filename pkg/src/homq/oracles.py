"""Brute-force oracles and seeded instance generators for the test suite.

Nothing here touches the interpolation or gamma machinery: each oracle
takes a different algebraic route (edge-subset expansion, filtered map
enumeration, explicit spin loops, root finding, Vandermonde solves).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InstanceTooLargeError
from .graph import Graph, build_graph, max_degree
from .hom import RestrictedHomInstance, SymmetricMatrixAssignment
from .iqp import GraphXProgram
from .ising import IsingInstance
from .regimes import delta_Delta, max_iqp_angle

MAX_ORACLE_EDGES = 14


def full_polynomial_coefficients(inst: RestrictedHomInstance) -> np.ndarray:
    """All ``|E| + 1`` normalized coefficients by expanding over edge subsets.

    ``a_n = sum_{|F| = n} m^{-|V(F) \\ S|} sum_phi prod_{e in F} (a^e - 1)``,
    the inner sum running over colourings of the endpoints of ``F`` that
    respect the pinning.
    """
    G = inst.graph
    E = G.edge_count
    if E > MAX_ORACLE_EDGES:
        raise InstanceTooLargeError(f"{E} edges exceed the oracle limit {MAX_ORACLE_EDGES}")
    m = inst.m
    pinned = set(inst.pinned)
    k = inst.pin_index - 1
    shifted = inst.matrices.matrices - 1.0
    out = np.zeros(E + 1, dtype=np.complex128)
    out[0] = 1.0
    for size in range(1, E + 1):
        for F in itertools.combinations(range(E), size):
            verts = sorted({x for e in F for x in G.edges[e][1:]})
            free = [v for v in verts if v not in pinned]
            total = 0j
            for colours in itertools.product(range(m), repeat=len(free)):
                phi = dict(zip(free, colours))
                term = 1 + 0j
                for e in F:
                    _, u, v = G.edges[e]
                    term *= shifted[e, phi.get(u, k), phi.get(v, k)]
                total += term
            out[size] += total / m ** len(free)
    return out


def hom_filtered_bruteforce(inst: RestrictedHomInstance) -> complex:
    """Enumerate every map ``V -> [m]`` and keep those that respect the pinning."""
    G = inst.graph
    m = inst.m
    if m**G.vertex_count > 10**6:
        raise InstanceTooLargeError("filtered brute force limited to 10^6 maps")
    k = inst.pin_index - 1
    mats = inst.matrices.matrices
    total = 0j
    for phi in itertools.product(range(m), repeat=G.vertex_count):
        if any(phi[s] != k for s in inst.pinned):
            continue
        term = 1 + 0j
        for e, u, v in G.edges:
            term *= mats[e, phi[u], phi[v]]
        total += term
    return total


def ising_spin_loop(inst: IsingInstance) -> complex:
    """Plain loop over spin tuples."""
    G = inst.graph
    total = 0j
    for sigma in itertools.product((-1, 1), repeat=G.vertex_count):
        energy = sum(inst.vertex_weights[v] * sigma[v] for v in range(G.vertex_count))
        energy += sum(inst.edge_weights[e] * sigma[u] * sigma[v] for e, u, v in G.edges)
        total += complex(np.exp(energy))
    return total


def power_sums_from_roots(coeffs, M: int) -> np.ndarray:
    """``sum_i r_i^{-j}`` for ``j = 1..M`` over numerically located roots."""
    a = np.trim_zeros(np.asarray(coeffs, dtype=np.complex128), "b")
    if a.size <= 1:
        return np.zeros(M, dtype=np.complex128)
    roots = np.roots(a[::-1])
    inv = 1.0 / roots
    return np.array([np.sum(inv**j) for j in range(1, M + 1)])


def coefficients_by_vandermonde(inst: RestrictedHomInstance, M: int) -> np.ndarray:
    """Coefficients of ``m^{-|V\\S|} Hom(A(z))`` from evaluations at roots of unity.

    The polynomial has degree ``|E|``; evaluating at ``|E| + 1`` points on a
    circle and solving the Vandermonde system recovers it exactly.
    """
    G = inst.graph
    deg = G.edge_count
    points = np.exp(2j * np.pi * np.arange(deg + 1) / (deg + 1))
    values = np.array([_normalized_value(inst, z) for z in points])
    V = np.vander(points, deg + 1, increasing=True)
    coeffs = np.linalg.solve(V, values)
    out = np.zeros(M + 1, dtype=np.complex128)
    upto = min(M, deg)
    out[: upto + 1] = coeffs[: upto + 1]
    return out


def _normalized_value(inst: RestrictedHomInstance, z: complex) -> complex:
    shifted = 1.0 + z * (inst.matrices.matrices - 1.0)
    moved = RestrictedHomInstance(
        inst.graph, SymmetricMatrixAssignment(inst.m, shifted), inst.pinned, inst.pin_index
    )
    return hom_filtered_bruteforce(moved) / inst.m ** (inst.graph.vertex_count - len(inst.pinned))


# -- generators ------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceGenerator:
    """Seeded sampler of bounded-degree connected instances.

    Graphs grow as random attachment trees under the degree cap, then gain
    up to ``max_extra_edges`` further random edges (rejected when they would
    exceed the cap or duplicate an edge).  Hom entries are ``1 - x`` with
    ``x`` uniform in the disc of radius ``radius_fraction * delta_D`` where
    ``D`` is the sampled graph's own maximum degree.  Ising weights satisfy
    ``|1 - e^{+-w}| <= radius_fraction * delta_{D'+1}`` with ``D'`` equal to
    ``region_degree`` (default ``max_degree``); IQP angles are uniform within
    the matching angle bound.  ``full_range`` switches Ising weights to
    arbitrary complex numbers of modulus at most 1 and IQP angles to all of
    ``[-pi, pi]``.
    """

    seed: int
    max_vertices: int = 10
    max_degree: int = 3
    radius_fraction: float = 0.9
    min_vertices: int = 1
    max_extra_edges: int = 4
    m: int = 2
    pin_probability: float = 0.3
    region_degree: int | None = None
    full_range: bool = False

    def __post_init__(self):
        if not 0.0 < self.radius_fraction <= 1.0:
            raise ValueError("radius_fraction must lie in (0, 1]")
        if not 1 <= self.min_vertices <= self.max_vertices:
            raise ValueError("need 1 <= min_vertices <= max_vertices")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")


def random_graph(rng: np.random.Generator, n: int, cap: int, extra: int) -> Graph:
    degree = [0] * n
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for v in range(1, n):
        open_ = [u for u in range(v) if degree[u] < cap]
        if not open_:
            break
        u = open_[int(rng.integers(len(open_)))]
        pairs.append((u, v))
        seen.add((u, v))
        degree[u] += 1
        degree[v] += 1
    if len(pairs) < n - 1:
        n = len(pairs) + 1
        degree = degree[:n]
    for _ in range(extra):
        if n < 2:
            break
        u, v = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
        if (u, v) in seen or degree[u] >= cap or degree[v] >= cap:
            continue
        pairs.append((u, v))
        seen.add((u, v))
        degree[u] += 1
        degree[v] += 1
    return build_graph(n, pairs)


def _disc(rng: np.random.Generator, radius: float, size) -> np.ndarray:
    r = radius * np.sqrt(rng.random(size))
    t = 2.0 * np.pi * rng.random(size)
    return r * np.exp(1j * t)


def _region_weight(rng: np.random.Generator, radius: float) -> complex:
    while True:
        x = complex(_disc(rng, radius, ()))
        w = np.log(1.0 - x)
        if abs(1.0 - np.exp(-w)) <= radius:
            return complex(w)


def _graph(gen: InstanceGenerator, rng: np.random.Generator) -> Graph:
    n = int(rng.integers(gen.min_vertices, gen.max_vertices + 1))
    extra = int(rng.integers(0, gen.max_extra_edges + 1))
    return random_graph(rng, n, gen.max_degree, extra)


def _hom(gen: InstanceGenerator, rng: np.random.Generator) -> RestrictedHomInstance:
    G = _graph(gen, rng)
    radius = gen.radius_fraction * delta_Delta(max(1, max_degree(G)))
    m = gen.m
    mats = np.empty((G.edge_count, m, m), dtype=np.complex128)
    iu = np.triu_indices(m)
    for e in range(G.edge_count):
        upper = 1.0 - _disc(rng, radius, len(iu[0]))
        mats[e][iu] = upper
        mats[e].T[iu] = upper
    pinned = tuple(v for v in range(G.vertex_count) if rng.random() < gen.pin_probability)
    k = int(rng.integers(1, m + 1))
    return RestrictedHomInstance(G, SymmetricMatrixAssignment(m, mats), pinned, k)


def _ising(gen: InstanceGenerator, rng: np.random.Generator) -> IsingInstance:
    G = _graph(gen, rng)
    if gen.full_range:
        edge = _disc(rng, 1.0, G.edge_count)
        vert = _disc(rng, 1.0, G.vertex_count)
        return IsingInstance(G, edge, vert)
    deg = gen.max_degree if gen.region_degree is None else gen.region_degree
    radius = gen.radius_fraction * delta_Delta(deg + 1)
    edge = [_region_weight(rng, radius) for _ in range(G.edge_count)]
    vert = [_region_weight(rng, radius) for _ in range(G.vertex_count)]
    return IsingInstance(G, edge, vert)


def _iqp(gen: InstanceGenerator, rng: np.random.Generator) -> GraphXProgram:
    G = _graph(gen, rng)
    if gen.full_range:
        limit = math.pi
    else:
        deg = gen.max_degree if gen.region_degree is None else gen.region_degree
        limit = max_iqp_angle(gen.radius_fraction * delta_Delta(deg + 1))
    edge = rng.uniform(-limit, limit, G.edge_count)
    vert = rng.uniform(-limit, limit, G.vertex_count)
    return GraphXProgram(G, edge, vert)


_SAMPLERS = {"hom": _hom, "ising": _ising, "iqp": _iqp}


def sample_instances(
    gen: InstanceGenerator, kind: Literal["hom", "ising", "iqp"], count: int
) -> list:
    """``count`` instances drawn from a fresh RNG seeded by ``gen.seed``."""
    try:
        sampler = _SAMPLERS[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {sorted(_SAMPLERS)}, got {kind!r}") from None
    rng = np.random.default_rng(gen.seed)
    return [sampler(gen, rng) for _ in range(count)]
