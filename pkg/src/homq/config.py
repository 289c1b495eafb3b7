"""Engine configuration: guards, budgets and switches with their defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, field


def _threads_from_env() -> int:
    raw = os.environ.get("HOMQ_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for the exact evaluators and the interpolation pipeline.

    enumeration_guard
        Largest number of maps/configurations a brute-force sum may visit.
    max_subsets, max_pairs
        Budgets on the connected-subset family and on the number of
        (subset, sub-subset) incidences used by the gamma decomposition.
    tight_support
        Enumerate connected subsets of at most ``order + 1`` vertices.  When
        False the generic bound of ``2 * order`` vertices is used instead.
    force_ratio
        Disc ratio used to pick the truncation order when a forced run sits
        on or outside the zero-free boundary.
    drop_zero_field_pendants
        Skip the pendant gadget for Ising vertices whose field is exactly 0.
    threads
        Worker cap for the per-subset local computations; read from
        ``HOMQ_THREADS`` by default.
    """

    enumeration_guard: int = 10**8
    max_subsets: int = 1_000_000
    max_pairs: int = 50_000_000
    tight_support: bool = True
    force_ratio: float = 0.95
    drop_zero_field_pendants: bool = False
    threads: int = field(default_factory=_threads_from_env)


DEFAULT_CONFIG = EngineConfig()


def resolve(config: EngineConfig | None) -> EngineConfig:
    return DEFAULT_CONFIG if config is None else config
