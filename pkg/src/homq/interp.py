"""Truncated log-Taylor interpolation of a normalized polynomial.

For ``p(z) = sum_k a_k z^k`` with ``a_0 = 1`` and roots ``r_i`` outside a
disc, ``log p(t) = -sum_j s_j t^j / j`` where ``s_j = sum_i r_i^{-j}`` are the
inverse power sums.  The ``s_j`` come from the coefficients through Newton's
identities, and only ``a_1..a_j`` are needed for ``s_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalizedError, RatioOutOfRangeError

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class TruncationPlan:
    epsilon: float
    ratio: float
    n_roots: int
    order: int


def _check_ratio(ratio: float) -> None:
    if not (0.0 <= ratio < 1.0) or math.isnan(ratio):
        raise RatioOutOfRangeError(
            f"ratio |t|/delta must lie in [0, 1), got {ratio!r}"
        )


def truncation_order(n_roots: int, epsilon: float, ratio: float) -> TruncationPlan:
    """Smallest integer order with ``order >= ln(n/eps) / (1 - ratio)``, at least 1."""
    if n_roots < 1:
        raise ValueError(f"n_roots must be >= 1, got {n_roots}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    _check_ratio(ratio)
    raw = math.log(n_roots / epsilon) / (1.0 - ratio)
    order = max(1, math.ceil(raw))
    return TruncationPlan(epsilon=epsilon, ratio=ratio, n_roots=n_roots, order=order)


def truncation_error_bound(n_roots: int, order: int, ratio: float) -> float:
    """``n * ratio^(M+1) / ((M+1) (1 - ratio))``: tail bound of the log series."""
    _check_ratio(ratio)
    return n_roots * ratio ** (order + 1) / ((order + 1) * (1.0 - ratio))


def certified_order(n_roots: int, epsilon: float, ratio: float) -> TruncationPlan:
    """:func:`truncation_order`, raised until the tail bound is at most ``epsilon``.

    The two agree unless ``ln(n/eps)`` is small, where the formula alone can
    leave the bound slightly above ``epsilon``.
    """
    plan = truncation_order(n_roots, epsilon, ratio)
    order = plan.order
    while truncation_error_bound(n_roots, order, ratio) > epsilon:
        order += 1
    return TruncationPlan(epsilon=epsilon, ratio=ratio, n_roots=n_roots, order=order)


def newton_power_sums(coeffs) -> np.ndarray:
    """Inverse power sums ``p_1..p_M`` from the prefix ``a_0..a_M`` (``a_0 = 1``).

    Uses ``p_k = -k a_k - sum_{j=1}^{k-1} p_j a_{k-j}``.
    """
    a = np.asarray(coeffs, dtype=np.complex128)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("coefficient prefix must be a nonempty 1-d sequence")
    if abs(a[0] - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedError(f"a_0 must equal 1, got {a[0]!r}")
    return newton_power_sums_batch(a[None, :])[0]


def newton_power_sums_batch(a: np.ndarray) -> np.ndarray:
    """Row-wise Newton recursion; ``a`` has shape ``(N, M+1)`` with ``a[:, 0] == 1``.

    Returns ``(N, M)``.  Trailing zero coefficients (beyond every row's
    degree) are skipped in the convolution.
    """
    a = np.asarray(a, dtype=np.complex128)
    n_rows, width = a.shape
    order = width - 1
    p = np.zeros((n_rows, width), dtype=np.complex128)
    nonzero = np.flatnonzero(np.any(a[:, 1:] != 0, axis=0))
    degree = int(nonzero[-1]) + 1 if nonzero.size else 0
    for k in range(1, order + 1):
        acc = -k * a[:, k] if k <= degree else np.zeros(n_rows, dtype=np.complex128)
        reach = min(k - 1, degree)
        if reach > 0:
            # columns k-1, ..., k-reach pair with a_1, ..., a_reach
            acc = acc - np.einsum("ij,ij->i", a[:, 1 : reach + 1], p[:, k - reach : k][:, ::-1])
        p[:, k] = acc
    return p[:, 1:]


def taylor_log_truncated(p, t: complex) -> complex:
    """``-sum_{j=1}^{M} p_j t^j / j`` (the ``log a_0`` term vanishes)."""
    p = np.asarray(p, dtype=np.complex128)
    if p.size == 0:
        return 0j
    j = np.arange(1, p.size + 1)
    return complex(-np.sum(p * np.power(complex(t), j) / j))
