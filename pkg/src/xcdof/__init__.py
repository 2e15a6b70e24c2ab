"""Exact-arithmetic toolkit for linear DoF analysis of the two-user MIMO
X-channel with delayed CSIT: closed-form constants, an explicit three-phase
precoding simulator over a large prime field, Monte Carlo verification of
the converse rank-ratio inequalities, the symmetric DoF region, and a
distributed-transmitter loss classifier.
"""

from .config import AntennaConfig, normalize
from .params import (
    Case,
    SchemeParams,
    bc_sum_dof,
    case_of,
    gamma,
    gamma_bounds,
    scheme_params,
    sum_dof,
    symmetric_closed_forms,
)

__version__ = "0.1.0"

__all__ = [
    "AntennaConfig",
    "Case",
    "SchemeParams",
    "bc_sum_dof",
    "case_of",
    "gamma",
    "gamma_bounds",
    "normalize",
    "scheme_params",
    "sum_dof",
    "symmetric_closed_forms",
    "__version__",
]
