"""Restricted multivariate graph homomorphism partition functions.

``Hom_M(G, S, k; A)`` sums, over maps ``phi: V -> [m]`` sending every pinned
vertex to ``k``, the product of ``A^e[phi(u), phi(v)]`` over the edges.

The approximation interpolates ``P(z) = m^{-|V\\S|} Hom_M(G, S, k; A(z))``
with ``A(z) = 1 + z (A - 1)`` from ``z = 0`` (where ``P = 1``) to ``z = 1``.
The inverse power sums of the roots of ``P`` split additively over connected
vertex subsets ``U`` (``gamma_U``); because edges carry distinct colours, each
``U`` is its own isomorphism class and no isomorphism testing is needed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import sparse

from . import interp
from .config import EngineConfig, resolve
from .errors import (
    InstanceTooLargeError,
    OutsideZeroFreeRegionError,
    SubsetNotConnectedError,
    VertexOutOfRangeError,
)
from .graph import (
    Graph,
    VertexSubset,
    connected_subset_masks,
    induced_edges,
    is_connected_subset,
    max_degree,
    members_of,
    neighborhood_masks,
    popcount,
)
from .regimes import BOUNDARY_TOL, RegimeReport, delta_Delta, polydisc_margin

_CHUNK = 1 << 16
_TENSOR_BUDGET = 1 << 22


@dataclass(frozen=True, eq=False)
class SymmetricMatrixAssignment:
    """One ``m x m`` symmetric complex matrix per edge, stored as ``(|E|, m, m)``."""

    m: int
    matrices: np.ndarray

    def __post_init__(self):
        mats = np.array(self.matrices, dtype=np.complex128)
        if mats.ndim != 3 or mats.shape[1:] != (self.m, self.m):
            raise ValueError(f"expected shape (|E|, {self.m}, {self.m}), got {mats.shape}")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        asym = np.flatnonzero(np.any(mats != np.swapaxes(mats, 1, 2), axis=(1, 2)))
        if asym.size:
            raise ValueError(f"matrix on edge {int(asym[0])} is not symmetric")
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def from_matrices(cls, per_edge: Sequence) -> "SymmetricMatrixAssignment":
        mats = np.asarray(per_edge, dtype=np.complex128)
        if mats.ndim != 3:
            raise ValueError("per_edge must be a sequence of square matrices")
        return cls(m=mats.shape[1], matrices=mats)

    @classmethod
    def uniform(cls, edge_count: int, matrix) -> "SymmetricMatrixAssignment":
        mat = np.asarray(matrix, dtype=np.complex128)
        return cls(m=mat.shape[0], matrices=np.broadcast_to(mat, (edge_count,) + mat.shape))

    @property
    def edge_count(self) -> int:
        return self.matrices.shape[0]


@dataclass(frozen=True, eq=False)
class RestrictedHomInstance:
    graph: Graph
    matrices: SymmetricMatrixAssignment
    pinned: VertexSubset = ()
    pin_index: int = 1

    def __post_init__(self):
        if self.matrices.edge_count != self.graph.edge_count:
            raise ValueError(
                f"{self.matrices.edge_count} matrices for {self.graph.edge_count} edges"
            )
        if not 1 <= self.pin_index <= self.matrices.m:
            raise ValueError(f"pin_index must lie in [1, {self.matrices.m}], got {self.pin_index}")
        pinned = tuple(sorted(set(int(v) for v in self.pinned)))
        for v in pinned:
            if not 0 <= v < self.graph.vertex_count:
                raise VertexOutOfRangeError(f"pinned vertex {v} outside the graph")
        object.__setattr__(self, "pinned", pinned)

    @property
    def m(self) -> int:
        return self.matrices.m

    @property
    def pinned_flags(self) -> np.ndarray:
        flags = np.zeros(self.graph.vertex_count, dtype=bool)
        flags[list(self.pinned)] = True
        return flags

    @property
    def free_count(self) -> int:
        return self.graph.vertex_count - len(self.pinned)


@dataclass(frozen=True)
class LocalGamma:
    subset: VertexSubset
    gammas: np.ndarray


@dataclass(frozen=True)
class Diagnostics:
    subset_count: int
    max_subset_size: int
    regime_margin: float


@dataclass(frozen=True)
class ApproxResult:
    """Interpolation estimate with its bookkeeping.

    ``log_value`` is the logarithm of ``value`` on the branch continued from
    ``z = 0``; it stays finite when ``value`` itself would overflow.
    """

    value: complex
    epsilon: float
    order: int
    diagnostics: Diagnostics
    threshold: float
    guarantee: bool = True
    error_bound: float = 0.0
    log_value: complex = 0j


# -- exact evaluation ---------------------------------------------------------


def _map_digits(idx: np.ndarray, count: int, m: int) -> np.ndarray:
    out = np.empty((idx.size, count), dtype=np.int64)
    rest = idx.copy()
    for i in range(count):
        out[:, i] = rest % m
        rest //= m
    return out


def hom_restricted_exact(
    inst: RestrictedHomInstance, config: EngineConfig | None = None
) -> complex:
    """Exhaustive sum over the ``m^{|V\\S|}`` maps that pin ``S`` to ``k``."""
    cfg = resolve(config)
    G, m = inst.graph, inst.m
    free = [v for v in range(G.vertex_count) if v not in set(inst.pinned)]
    total = m ** len(free)
    if total > cfg.enumeration_guard:
        raise InstanceTooLargeError(
            f"{m}^{len(free)} maps exceed the enumeration guard {cfg.enumeration_guard}"
        )
    mats = inst.matrices.matrices
    ends = G.edge_endpoints
    result = 0j
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        phi = np.full((idx.size, G.vertex_count), inst.pin_index - 1, dtype=np.int64)
        if free:
            phi[:, free] = _map_digits(idx, len(free), m)
        prod = np.ones(idx.size, dtype=np.complex128)
        for e in range(G.edge_count):
            u, v = ends[e]
            prod *= mats[e, phi[:, u], phi[:, v]]
        result += complex(prod.sum())
    return result


def hom_exact(G: Graph, A: SymmetricMatrixAssignment, config: EngineConfig | None = None) -> complex:
    return hom_restricted_exact(RestrictedHomInstance(G, A), config)


def matrices_at(A: SymmetricMatrixAssignment, z: complex) -> SymmetricMatrixAssignment:
    """Entrywise ``1 + z (a - 1)``."""
    return SymmetricMatrixAssignment(m=A.m, matrices=1.0 + complex(z) * (A.matrices - 1.0))


def with_matrices(inst: RestrictedHomInstance, A: SymmetricMatrixAssignment) -> RestrictedHomInstance:
    return RestrictedHomInstance(inst.graph, A, inst.pinned, inst.pin_index)


# -- local polynomials ---------------------------------------------------------


def _phi_table(f: int, m: int, pin: int) -> np.ndarray:
    """All maps of ``f`` free slots, plus a trailing constant column ``pin``."""
    table = np.empty((m**f, f + 1), dtype=np.int64)
    table[:, :f] = _map_digits(np.arange(m**f, dtype=np.int64), f, m)
    table[:, f] = pin
    return table


def _multiply_edges(mats, phi, edge_ids, slots, D, batch) -> np.ndarray:
    """Coefficients of ``prod_e (1 + z (a_e - 1))`` for every map, truncated at ``z^D``.

    ``edge_ids`` is ``(batch, e)`` and ``slots`` ``(batch, e, 2)`` indexes
    columns of ``phi``.  Returns ``(batch, maps, D + 1)``.
    """
    Q = np.zeros((batch, phi.shape[0], D + 1), dtype=np.complex128)
    Q[:, :, 0] = 1.0
    for s in range(edge_ids.shape[1]):
        xi = phi[:, slots[:, s, 0]].T
        xj = phi[:, slots[:, s, 1]].T
        d = mats[edge_ids[:, s][:, None], xi, xj] - 1.0
        top = min(D, s + 1)
        Q[:, :, 1 : top + 1] = Q[:, :, 1 : top + 1] + d[:, :, None] * Q[:, :, :top]
    return Q


def local_coefficients(
    inst: RestrictedHomInstance, U: Iterable[int], M: int, config: EngineConfig | None = None
) -> np.ndarray:
    """Normalized coefficients ``a_0..a_M`` of the polynomial of ``G[U]``.

    ``a_n`` is the sum over ``n``-edge subsets ``F`` of ``E(G[U])`` of
    ``m^{-|V(F)\\S|}`` times the pinned map sum of ``prod_F (a - 1)``.  The
    same numbers come out of expanding ``m^{-|U\\S|} Hom_M(G[U], S & U, k;
    A(z))`` in ``z``, which is what is evaluated here.
    """
    cfg = resolve(config)
    G = inst.graph
    members = tuple(sorted(set(int(v) for v in U)))
    if not members or not is_connected_subset(G, members):
        raise SubsetNotConnectedError(f"subset {members} does not induce a connected subgraph")
    pinned = set(inst.pinned)
    free = [v for v in members if v not in pinned]
    m = inst.m
    if m ** len(free) > cfg.enumeration_guard:
        raise InstanceTooLargeError(f"{m}^{len(free)} local maps exceed the guard")
    eids = induced_edges(G, members)
    out = np.zeros(M + 1, dtype=np.complex128)
    out[0] = 1.0
    if not eids:
        return out
    slot = {v: i for i, v in enumerate(free)}
    f = len(free)
    ends = G.edge_endpoints
    slots = np.array([[slot.get(int(ends[e, 0]), f), slot.get(int(ends[e, 1]), f)] for e in eids])
    D = min(M, len(eids))
    Q = _multiply_edges(
        inst.matrices.matrices,
        _phi_table(f, m, inst.pin_index - 1),
        np.array([eids], dtype=np.int64),
        slots[None, :, :],
        D,
        1,
    )[0]
    out[: D + 1] = Q.sum(axis=0) / float(m**f)
    out[0] = 1.0
    return out


# -- batched family evaluation -------------------------------------------------


@dataclass
class _Core:
    mask: int
    free: list[int]
    eids: list[int]
    slots: list[tuple[int, int]]
    rows: list[int] = field(default_factory=list)
    pendant_lists: list[list[int]] = field(default_factory=list)
    D: int = 0


def _run(tasks: list[Callable[[], None]], threads: int) -> None:
    if threads <= 1 or len(tasks) <= 1:
        for task in tasks:
            task()
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for fut in [pool.submit(task) for task in tasks]:
            fut.result()


def _family_coefficients(
    inst: RestrictedHomInstance, masks: np.ndarray, M: int, cfg: EngineConfig
) -> np.ndarray:
    """Local coefficient prefixes for every subset in ``masks`` (``(N, M+1)``).

    Pinned degree-one vertices whose neighbour is free (the Ising field
    gadgets) are peeled off: subsets sharing the same remaining core are
    evaluated together by contracting the core's map tensor one free vertex
    at a time against the pendant factors.
    """
    G, m = inst.graph, inst.m
    mats = inst.matrices.matrices
    pin = inst.pin_index - 1
    flags = inst.pinned_flags
    ends = G.edge_endpoints
    n_rows = len(masks)
    out = np.zeros((n_rows, M + 1), dtype=np.complex128)
    out[:, 0] = 1.0

    anchor: dict[int, tuple[int, int]] = {}
    for t in range(G.vertex_count):
        if flags[t] and len(G.adjacency[t]) == 1:
            u, eid = G.adjacency[t][0]
            if not flags[u]:
                anchor[t] = (u, eid)

    cores_arr = masks.copy()
    for t, (u, _) in anchor.items():
        hit = (((masks >> t) & 1) == 1) & (((masks >> u) & 1) == 1)
        if np.any(hit):
            cores_arr[hit] = cores_arr[hit] & ~(1 << t)
    core_vals, inverse = np.unique(cores_arr, return_inverse=True)
    inverse = inverse.reshape(-1)

    cores: list[_Core] = []
    for cv in core_vals:
        members = members_of(cv)
        mset = set(members)
        free = [v for v in members if not flags[v]]
        slot = {v: i for i, v in enumerate(free)}
        f = len(free)
        eids = [eid for eid, u, v in G.edges if u in mset and v in mset]
        slots = [(slot.get(int(ends[e, 0]), f), slot.get(int(ends[e, 1]), f)) for e in eids]
        cores.append(_Core(mask=int(cv), free=free, eids=eids, slots=slots))
    for row, ci in enumerate(inverse):
        cores[ci].rows.append(row)

    for core in cores:
        extra = 0
        for row in core.rows:
            extra |= int(masks[row]) & ~core.mask
        plists = [[] for _ in core.free]
        slot = {v: i for i, v in enumerate(core.free)}
        for t in members_of(extra):
            plists[slot[anchor[t][0]]].append(t)
        core.pendant_lists = plists
        core.D = min(M, len(core.eids) + sum(len(p) for p in plists))

    groups: dict[tuple[int, int], list[_Core]] = {}
    for core in cores:
        if m ** len(core.free) > cfg.enumeration_guard:
            raise InstanceTooLargeError(f"{m}^{len(core.free)} local maps exceed the guard")
        groups.setdefault((len(core.free), len(core.eids)), []).append(core)

    tasks: list[Callable[[], None]] = []
    for (f, e), members in groups.items():
        width = m**f * (max(c.D for c in members) + 1)
        step = max(1, _TENSOR_BUDGET // max(width, 1))
        for start in range(0, len(members), step):
            chunk = members[start : start + step]
            tasks.append(
                lambda chunk=chunk, f=f, e=e: _evaluate_cores(
                    chunk, f, e, m, mats, pin, masks, anchor, out
                )
            )
    _run(tasks, cfg.threads)
    return out


def _evaluate_cores(chunk, f, e, m, mats, pin, masks, anchor, out) -> None:
    D = max(c.D for c in chunk)
    phi = _phi_table(f, m, pin)
    if e:
        edge_ids = np.array([c.eids for c in chunk], dtype=np.int64)
        slots = np.array([c.slots for c in chunk], dtype=np.int64)
        Q = _multiply_edges(mats, phi, edge_ids, slots, D, len(chunk))
    else:
        Q = np.zeros((len(chunk), phi.shape[0], D + 1), dtype=np.complex128)
        Q[:, :, 0] = 1.0
    scale = float(m**f)
    for ci, core in enumerate(chunk):
        if not any(core.pendant_lists):
            poly = Q[ci].sum(axis=0) / scale
            poly[0] = 1.0
            for row in core.rows:
                out[row, : D + 1] = poly
            continue
        table = _contract_pendants(Q[ci], core, f, m, mats, pin, anchor, D)
        for row in core.rows:
            mask = int(masks[row])
            index = []
            for i in reversed(range(f)):
                c = 0
                for j, t in enumerate(core.pendant_lists[i]):
                    if (mask >> t) & 1:
                        c |= 1 << j
                index.append(c)
            poly = table[tuple(index)] / scale
            poly[0] = 1.0
            out[row, : D + 1] = poly


def _contract_pendants(Qc, core, f, m, mats, pin, anchor, D) -> np.ndarray:
    """Sum the core map tensor against every choice of attached pendants.

    Axis ``f-1-i`` of the reshaped tensor indexes the colour of free vertex
    ``i``; it is replaced by an axis over subsets of that vertex's pendants.
    """
    T = Qc.reshape((m,) * f + (D + 1,))
    for i in range(f):
        ax = f - 1 - i
        plist = core.pendant_lists[i]
        r = len(plist)
        weights = np.zeros((1 << r, m, r + 1), dtype=np.complex128)
        weights[:, :, 0] = 1.0
        choice = np.arange(1 << r)
        for j, t in enumerate(plist):
            lin = mats[anchor[t][1], :, pin] - 1.0
            has = ((choice >> j) & 1) == 1
            weights[has, :, 1:] = weights[has, :, 1:] + lin[None, :, None] * weights[has, :, :-1]
        X = np.moveaxis(T, ax, 0)
        rest = X.shape[1:-1]
        X = X.reshape(m, -1, D + 1)
        res = np.zeros((1 << r, X.shape[1], D + 1), dtype=np.complex128)
        for dd in range(min(r, D) + 1):
            res[:, :, dd:] += np.einsum("cx,xrd->crd", weights[:, :, dd], X[:, :, : D + 1 - dd])
        T = np.moveaxis(res.reshape((1 << r,) + rest + (D + 1,)), 0, ax)
    return T


def _bit_values(positions: np.ndarray, dtype) -> np.ndarray:
    if dtype == object:
        flat = np.array([1 << int(p) for p in positions.ravel()], dtype=object)
        return flat.reshape(positions.shape)
    return np.left_shift(np.int64(1), positions.astype(np.int64))


def _gamma_operator(G: Graph, masks: np.ndarray, sizes: np.ndarray, bound: int, max_pairs: int):
    """Sparse ``S`` with ``gamma = S @ p`` over the connected-subset family.

    ``gamma_U = sum (-1)^{|U\\C|} p_C`` over connected ``C`` with
    ``C <= U <= C + boundary(C)``: the Moebius inversion of ``U -> p(G[U])``
    with the disconnected terms (additive over components) cancelled in
    closed form.  Singletons have ``p = 0`` and are skipped as sources.
    """
    n_rows = len(masks)
    bnd = neighborhood_masks(G, masks) & ~masks
    b = popcount(bnd)
    room = np.minimum(bound - sizes, b)
    source = sizes > 1
    counts = {}
    for bb, rr in set(zip(b[source].tolist(), room[source].tolist())):
        counts[(bb, rr)] = sum(math.comb(bb, y) for y in range(rr + 1))
    total = sum(
        counts[(bb, rr)] * int(np.count_nonzero(source & (b == bb) & (room == rr)))
        for bb, rr in counts
    )
    if total > max_pairs:
        raise InstanceTooLargeError(f"gamma decomposition needs {total} incidences (> {max_pairs})")
    rows, cols, vals = [], [], []
    n = G.vertex_count
    for (bb, rr) in sorted(counts):
        sel = np.flatnonzero(source & (b == bb) & (room == rr))
        combos = [c for y in range(rr + 1) for c in combinations(range(bb), y)]
        sign = np.array([(-1.0) ** len(c) for c in combos])
        if bb == 0:
            rows.append(sel)
            cols.append(sel)
            vals.append(np.ones(sel.size))
            continue
        pick = np.zeros((len(combos), bb), dtype=np.int64 if masks.dtype != object else object)
        for ci, c in enumerate(combos):
            pick[ci, list(c)] = 1
        hits = np.zeros((sel.size, n), dtype=bool)
        for v in range(n):
            hits[:, v] = ((bnd[sel] >> v) & 1) == 1
        positions = np.nonzero(hits)[1].reshape(sel.size, bb)
        ymasks = _bit_values(positions, masks.dtype) @ pick.T
        targets = (masks[sel][:, None] | ymasks).ravel()
        where = np.searchsorted(masks, targets)
        where = np.minimum(where, n_rows - 1)
        if not np.all(masks[where] == targets):
            raise RuntimeError("subset family is not closed under boundary extension")
        rows.append(where)
        cols.append(np.repeat(sel, len(combos)))
        vals.append(np.tile(sign, sel.size))
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        v = np.concatenate(vals)
    else:
        r = c = np.zeros(0, dtype=np.int64)
        v = np.zeros(0)
    return sparse.csr_matrix((v, (r, c)), shape=(n_rows, n_rows))


@dataclass
class FamilyEvaluation:
    """Per-subset arrays over the connected-subset family, sorted by bitmask."""

    masks: np.ndarray
    sizes: np.ndarray
    coefficients: np.ndarray
    power_sums: np.ndarray
    gammas: np.ndarray
    bound: int

    @property
    def global_power_sums(self) -> np.ndarray:
        return self.gammas.sum(axis=0)


def subset_bound(M: int, config: EngineConfig | None = None) -> int:
    """Vertices needed per connected support: ``M + 1`` (tight) or ``2 M``."""
    return M + 1 if resolve(config).tight_support else max(2 * M, M + 1)


def evaluate_family(
    inst: RestrictedHomInstance,
    M: int,
    bound: int | None = None,
    config: EngineConfig | None = None,
) -> FamilyEvaluation:
    if M < 1:
        raise ValueError(f"order must be >= 1, got {M}")
    cfg = resolve(config)
    if bound is None:
        bound = subset_bound(M, cfg)
    G = inst.graph
    masks, sizes = connected_subset_masks(G, bound, cfg.max_subsets)
    coeffs = _family_coefficients(inst, masks, M, cfg)
    psums = interp.newton_power_sums_batch(coeffs)
    S = _gamma_operator(G, masks, sizes, bound, cfg.max_pairs)
    gammas = np.asarray(S @ psums) if len(masks) else np.zeros((0, M), dtype=np.complex128)
    return FamilyEvaluation(masks, sizes, coeffs, psums, gammas, bound)


def gamma_decomposition(
    inst: RestrictedHomInstance,
    M: int,
    bound: int | None = None,
    config: EngineConfig | None = None,
) -> list[LocalGamma]:
    """``gamma_{U,1..M}`` for every connected ``U`` within the subset bound,
    in lexicographic order of ``U``.

    Satisfies ``gamma_U = p(U) - sum_{W < U connected} gamma_W``.
    """
    fam = evaluate_family(inst, M, bound, config)
    out = [LocalGamma(members_of(mask), fam.gammas[i].copy()) for i, mask in enumerate(fam.masks)]
    out.sort(key=lambda g: g.subset)
    return out


def global_power_sums(
    inst: RestrictedHomInstance,
    M: int,
    bound: int | None = None,
    config: EngineConfig | None = None,
) -> np.ndarray:
    """Inverse power sums ``p_1..p_M`` of the roots of ``P(G, S, k; z)``."""
    return evaluate_family(inst, M, bound, config).global_power_sums


# -- approximation -------------------------------------------------------------


def _scaled_exp(m: int, free: int, log_p: complex) -> complex:
    try:
        prefactor = float(m**free)
    except OverflowError:
        prefactor = math.inf
    if math.isfinite(prefactor):
        return complex(prefactor * np.exp(log_p))
    return complex(np.exp(free * math.log(m) + log_p))


def approx_hom_restricted(
    inst: RestrictedHomInstance,
    epsilon: float,
    delta_cap: float | None = None,
    *,
    force: bool = False,
    config: EngineConfig | None = None,
) -> ApproxResult:
    """Multiplicative ``epsilon``-approximation of ``Hom_M(G, S, k; A)``.

    ``delta_cap`` is the polydisc radius certified for the matrices; it
    defaults to their tight margin ``max |1 - a|``.  Rejects with
    :class:`OutsideZeroFreeRegionError` unless ``delta_cap < delta_Delta``
    for the graph's maximum degree; ``force=True`` runs anyway and clears
    ``guarantee``.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    cfg = resolve(config)
    G = inst.graph
    threshold = delta_Delta(max(1, max_degree(G)))
    report = polydisc_margin(inst.matrices, threshold)
    return _approx_with_report(inst, epsilon, delta_cap, report, force, cfg)


def _approx_with_report(
    inst: RestrictedHomInstance,
    epsilon: float,
    delta_cap: float | None,
    report: RegimeReport,
    force: bool,
    cfg: EngineConfig,
) -> ApproxResult:
    threshold = report.threshold
    cap = report.margin if delta_cap is None else float(delta_cap)
    guarantee = True
    if cap < report.margin - BOUNDARY_TOL:
        if not force:
            raise OutsideZeroFreeRegionError(
                f"matrices reach {report.margin:.6g} > delta_cap {cap:.6g}", report
            )
        guarantee = False
        cap = report.margin
    if not cap < threshold - BOUNDARY_TOL:
        if not force:
            raise OutsideZeroFreeRegionError(
                f"radius {cap:.6g} is not inside the zero-free disc {threshold:.6g}", report
            )
        guarantee = False
    ratio = cap / threshold
    if not guarantee and ratio >= cfg.force_ratio:
        ratio = cfg.force_ratio
    G = inst.graph
    n_roots = max(1, G.edge_count)
    plan = interp.certified_order(n_roots, epsilon, ratio)
    M = plan.order
    fam = evaluate_family(inst, M, subset_bound(M, cfg), cfg)
    log_p = interp.taylor_log_truncated(fam.global_power_sums, 1.0)
    log_value = inst.free_count * math.log(inst.m) + log_p
    diag = Diagnostics(
        subset_count=int(len(fam.masks)),
        max_subset_size=int(fam.sizes.max()) if len(fam.sizes) else 0,
        regime_margin=report.margin,
    )
    return ApproxResult(
        value=_scaled_exp(inst.m, inst.free_count, log_p),
        epsilon=epsilon,
        order=M,
        diagnostics=diag,
        threshold=threshold,
        guarantee=guarantee,
        error_bound=interp.truncation_error_bound(n_roots, M, ratio),
        log_value=complex(log_value),
    )
