"""Zero-free radii and membership margins.

``delta_Delta(D)`` is the radius of the polydisc around the all-ones
matrices inside which the restricted homomorphism partition function of any
graph of maximum degree ``D`` cannot vanish.  Membership is strict:
``inside`` means ``margin < threshold`` (with :data:`BOUNDARY_TOL` of slack
so that parameters sitting on the boundary up to rounding count as outside).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from .errors import DeltaOutOfRangeError

if TYPE_CHECKING:
    from .hom import SymmetricMatrixAssignment
    from .ising import IsingInstance

BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class RegimeReport:
    margin: float
    threshold: float
    inside: bool
    worst_offender: str | None

    def as_dict(self) -> dict:
        return {
            "margin": self.margin,
            "threshold": self.threshold,
            "inside": self.inside,
            "worst_offender": self.worst_offender,
        }


def make_report(margin: float, threshold: float, worst: str | None) -> RegimeReport:
    inside = bool(margin < threshold - BOUNDARY_TOL)
    return RegimeReport(margin=float(margin), threshold=float(threshold), inside=inside, worst_offender=worst)


def _radius_profile(alpha, Delta: int):
    return np.sin(alpha / 2.0) * np.cos(alpha * Delta / 2.0)


@lru_cache(maxsize=None)
def delta_Delta(Delta: int) -> float:
    """``max_{0 < a < 2 pi / (3 D)} sin(a/2) cos(a D / 2)`` by ternary search.

    The log-derivative ``cot(a/2)/2 - D tan(a D/2)/2`` is strictly
    decreasing on the interval, so the profile is unimodal.
    """
    Delta = int(Delta)
    if Delta < 1:
        raise ValueError(f"Delta must be >= 1, got {Delta}")
    lo, hi = 0.0, 2.0 * math.pi / (3.0 * Delta)
    for _ in range(200):
        a = lo + (hi - lo) / 3.0
        b = hi - (hi - lo) / 3.0
        if _radius_profile(a, Delta) < _radius_profile(b, Delta):
            lo = a
        else:
            hi = b
        if hi - lo < 1e-15:
            break
    return float(_radius_profile(0.5 * (lo + hi), Delta))


def delta_Delta_grid(Delta: int, points: int = 10**6) -> float:
    """Dense-grid maximization with golden-section refinement (fallback path)."""
    hi = 2.0 * math.pi / (3.0 * Delta)
    alpha = np.linspace(0.0, hi, points + 2)[1:-1]
    values = _radius_profile(alpha, Delta)
    i = int(np.argmax(values))
    step = alpha[1] - alpha[0]
    lo, up = max(alpha[i] - step, 0.0), min(alpha[i] + step, hi)
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    for _ in range(100):
        c = up - inv_phi * (up - lo)
        d = lo + inv_phi * (up - lo)
        if _radius_profile(c, Delta) > _radius_profile(d, Delta):
            up = d
        else:
            lo = c
    return float(max(values[i], _radius_profile(0.5 * (lo + up), Delta)))


def polydisc_margin(A: "SymmetricMatrixAssignment", threshold: float) -> RegimeReport:
    """Largest ``|1 - a_ij^e|`` over all edges and entries."""
    mats = A.matrices
    if mats.size == 0:
        return make_report(0.0, threshold, None)
    dist = np.abs(1.0 - mats)
    flat = int(np.argmax(dist))
    e, i, j = np.unravel_index(flat, dist.shape)
    margin = float(dist[e, i, j])
    worst = f"edge {int(e)} entry ({int(i) + 1},{int(j) + 1})"
    return make_report(margin, threshold, worst)


def _exp_margin(w: np.ndarray) -> np.ndarray:
    return np.maximum(np.abs(1.0 - np.exp(w)), np.abs(1.0 - np.exp(-w)))


def polyregion_margin(inst: "IsingInstance", threshold: float | None = None) -> RegimeReport:
    """Largest ``|1 - e^{+-w}|`` over edge couplings and vertex fields.

    ``threshold`` defaults to ``delta_Delta(max_degree + 1)``.
    """
    from .graph import max_degree

    if threshold is None:
        threshold = delta_Delta(max_degree(inst.graph) + 1)
    edge = _exp_margin(np.asarray(inst.edge_weights, dtype=np.complex128))
    vert = _exp_margin(np.asarray(inst.vertex_weights, dtype=np.complex128))
    margin, worst = 0.0, None
    if edge.size and float(edge.max()) > margin:
        e = int(np.argmax(edge))
        margin, worst = float(edge[e]), f"edge {e}"
    if vert.size and float(vert.max()) > margin:
        v = int(np.argmax(vert))
        margin, worst = float(vert[v]), f"vertex {v}"
    return make_report(margin, threshold, worst)


def max_iqp_angle(delta: float) -> float:
    """Largest real angle ``|w|`` with ``|1 - e^{i w}| <= delta``: ``2 arcsin(delta/2)``."""
    if not 0.0 < delta <= 2.0:
        raise DeltaOutOfRangeError(f"delta must lie in (0, 2], got {delta!r}")
    return 2.0 * math.asin(delta / 2.0)
