"""Singular-value bounds, tightness tests and quantum realizations for correlation Bell inequalities."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    BellMatrix,
    BoundsReport,
    VectorStrategy,
    local_bound,
    quantum_bound,
    seesaw_lower_bound,
    violation_report,
)
from .multipartite import BellTensor, best_pair_bound, multipartite_bound, multipartite_local_bound  # noqa: E402
from .realization import dimension_bounds, verify_realization  # noqa: E402
from .tightness import TightnessResult, ellipsoid_data, solve_alpha  # noqa: E402

__all__ = [
    "BellMatrix",
    "BellTensor",
    "BoundsReport",
    "TightnessResult",
    "VectorStrategy",
    "best_pair_bound",
    "dimension_bounds",
    "ellipsoid_data",
    "local_bound",
    "multipartite_bound",
    "multipartite_local_bound",
    "quantum_bound",
    "seesaw_lower_bound",
    "solve_alpha",
    "verify_realization",
    "violation_report",
]
