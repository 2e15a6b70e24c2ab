"""Exact dense linear algebra over a large prime field.

Realizes generic continuous channels as uniform draws over F_p and
computes all ranks, kernels, and solvability checks without numerical
tolerance.  Hot kernels are JIT-compiled (numba) with a pure-numpy
fallback selected by the XCDOF_BACKEND environment variable.
"""

from .backend import BACKEND_NAME, ENV_VAR
from .matrix import (
    FieldMatrix,
    RowBasis,
    hstack,
    left_kernel_against,
    proj_rank_gain,
    rank_of,
    vstack,
)
from .primes import DEFAULT_PRIME, MERSENNE61, SECOND_PRIME, validate_prime
from .rng import FieldRng, derive_key, random_matrix

__all__ = [
    "BACKEND_NAME",
    "ENV_VAR",
    "DEFAULT_PRIME",
    "MERSENNE61",
    "SECOND_PRIME",
    "FieldMatrix",
    "FieldRng",
    "RowBasis",
    "derive_key",
    "hstack",
    "left_kernel_against",
    "proj_rank_gain",
    "random_matrix",
    "rank_of",
    "validate_prime",
    "vstack",
]
