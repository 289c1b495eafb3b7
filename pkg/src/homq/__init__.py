"""Zero-free polynomial interpolation for complex homomorphism, Ising and IQP
partition functions on bounded-degree graphs."""

from __future__ import annotations

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import (
    AngleOutOfRangeError,
    DeltaOutOfRangeError,
    DuplicateEdgeRowError,
    EmptySubsetError,
    GraphError,
    HomqError,
    InstanceParseError,
    InstanceTooLargeError,
    NotNormalizedError,
    OutsideZeroFreeRegionError,
    ParallelEdgeError,
    RatioOutOfRangeError,
    RowWeightUnsupportedError,
    SelfLoopError,
    SubsetNotConnectedError,
    VertexOutOfRangeError,
)
from .graph import (
    Graph,
    build_graph,
    enumerate_connected_subsets,
    induced_edges,
    is_connected_subset,
    max_degree,
)
from .hom import (
    ApproxResult,
    Diagnostics,
    LocalGamma,
    RestrictedHomInstance,
    SymmetricMatrixAssignment,
    approx_hom_restricted,
    gamma_decomposition,
    global_power_sums,
    hom_exact,
    hom_restricted_exact,
    local_coefficients,
    matrices_at,
)
from .interp import (
    TruncationPlan,
    newton_power_sums,
    taylor_log_truncated,
    truncation_error_bound,
    truncation_order,
)
from .iqp import (
    Amplitude,
    GraphXProgram,
    XProgram,
    output_probability_zero,
    psi_statevector,
    psi_via_ising,
    xprogram_to_graph,
)
from .ising import IsingInstance, ising_to_hom, ising_weight, z_ising_approx, z_ising_exact
from .regimes import (
    RegimeReport,
    delta_Delta,
    max_iqp_angle,
    polydisc_margin,
    polyregion_margin,
)

__version__ = "0.1.0"

__all__ = [
    "Amplitude",
    "AngleOutOfRangeError",
    "ApproxResult",
    "DeltaOutOfRangeError",
    "Diagnostics",
    "DuplicateEdgeRowError",
    "EmptySubsetError",
    "Graph",
    "GraphError",
    "GraphXProgram",
    "HomqError",
    "InstanceParseError",
    "InstanceTooLargeError",
    "IsingInstance",
    "LocalGamma",
    "NotNormalizedError",
    "OutsideZeroFreeRegionError",
    "ParallelEdgeError",
    "RatioOutOfRangeError",
    "RegimeReport",
    "RestrictedHomInstance",
    "RowWeightUnsupportedError",
    "SelfLoopError",
    "SubsetNotConnectedError",
    "SymmetricMatrixAssignment",
    "TruncationPlan",
    "VertexOutOfRangeError",
    "XProgram",
    "approx_hom_restricted",
    "build_graph",
    "delta_Delta",
    "enumerate_connected_subsets",
    "gamma_decomposition",
    "global_power_sums",
    "hom_exact",
    "hom_restricted_exact",
    "induced_edges",
    "is_connected_subset",
    "ising_to_hom",
    "ising_weight",
    "local_coefficients",
    "matrices_at",
    "max_degree",
    "max_iqp_angle",
    "newton_power_sums",
    "output_probability_zero",
    "polydisc_margin",
    "polyregion_margin",
    "psi_statevector",
    "psi_via_ising",
    "taylor_log_truncated",
    "truncation_error_bound",
    "truncation_order",
    "xprogram_to_graph",
    "z_ising_approx",
    "z_ising_exact",
]
