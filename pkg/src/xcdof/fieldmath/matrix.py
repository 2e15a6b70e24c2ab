"""Dense exact matrices over F_p.

FieldMatrix wraps a read-only uint64 array plus its modulus.  Ranks are
exact (no thresholding) and cached per instance; all operations return
new matrices.  Instances are safe to share between threads.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .. import errors
from .backend import kernels
from .primes import DEFAULT_PRIME


def _as_field_array(data, p: int) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(data, dtype=np.uint64))
    if arr.ndim != 2:
        raise errors.ConfigError(f"expected 2-d matrix, got shape {arr.shape}")
    if arr.size and arr.max() >= np.uint64(p):
        arr = arr % np.uint64(p)
    return arr


class FieldMatrix:
    """Immutable dense matrix over F_p."""

    __slots__ = ("data", "prime", "_rank")

    def __init__(self, data, prime: int = DEFAULT_PRIME):
        arr = _as_field_array(data, prime)
        arr.setflags(write=False)
        self.data = arr
        self.prime = int(prime)
        self._rank: int | None = None

    # -- construction -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, prime: int = DEFAULT_PRIME) -> "FieldMatrix":
        return cls(np.zeros((rows, cols), np.uint64), prime)

    @classmethod
    def identity(cls, n: int, prime: int = DEFAULT_PRIME) -> "FieldMatrix":
        return cls(np.eye(n, dtype=np.uint64), prime)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], prime: int = DEFAULT_PRIME
    ) -> "FieldMatrix":
        return cls(np.array([[v % prime for v in row] for row in rows], np.uint64), prime)

    # -- basics --------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldMatrix)
            and self.prime == other.prime
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __repr__(self) -> str:
        return f"FieldMatrix({self.rows}x{self.cols} mod {self.prime})"

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.data]

    def _check_prime(self, other: "FieldMatrix") -> None:
        if self.prime != other.prime:
            raise errors.ConfigError("mixed moduli")

    # -- arithmetic -----------------------------------------------------

    def mul(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check_prime(other)
        if self.cols != other.rows:
            raise errors.ConfigError(
                f"matmul shape mismatch {self.data.shape} x {other.data.shape}"
            )
        return FieldMatrix(
            kernels.matmul(self.data, other.data, np.uint64(self.prime)), self.prime
        )

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return self.mul(other)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.data.T.copy(), self.prime)

    # -- rank machinery ---------------------------------------------------

    def rank(self) -> int:
        if self._rank is None:
            self._rank = int(
                kernels.rank_destructive(self.data.copy(), np.uint64(self.prime))
            )
        return self._rank

    def rref(self) -> tuple["FieldMatrix", list[int]]:
        work = self.data.copy()
        _, pivots = kernels.rref_destructive(work, np.uint64(self.prime), self.cols)
        return FieldMatrix(work, self.prime), [int(c) for c in pivots]


def hstack(mats: Iterable[FieldMatrix]) -> FieldMatrix:
    mats = [m for m in mats if m.cols > 0 or m.rows > 0]
    if not mats:
        raise errors.ConfigError("hstack of nothing")
    p = mats[0].prime
    rows = mats[0].rows
    for m in mats:
        if m.prime != p or m.rows != rows:
            raise errors.ConfigError("hstack shape/prime mismatch")
    return FieldMatrix(np.concatenate([m.data for m in mats], axis=1), p)


def vstack(mats: Iterable[FieldMatrix]) -> FieldMatrix:
    mats = list(mats)
    if not mats:
        raise errors.ConfigError("vstack of nothing")
    p = mats[0].prime
    cols = mats[0].cols
    for m in mats:
        if m.prime != p or m.cols != cols:
            raise errors.ConfigError("vstack shape/prime mismatch")
    return FieldMatrix(np.concatenate([m.data for m in mats], axis=0), p)


def rank_of(*blocks: FieldMatrix) -> int:
    """Rank of the column-concatenation of the given blocks."""
    blocks = [b for b in blocks if b.cols > 0]
    if not blocks:
        return 0
    if len(blocks) == 1:
        return blocks[0].rank()
    return hstack(blocks).rank()


def left_kernel_against(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    """Basis of {l : l @ b = 0}, as rows; the single-source equations an
    observer can form are then the rows of L @ a.

    Requires a.rows == b.rows.  Row count of L is a.rows - rank(b).
    """
    a._check_prime(b)
    if a.rows != b.rows:
        raise errors.ConfigError("row count mismatch")
    m = b.rows
    if b.cols == 0:
        return FieldMatrix.identity(m, b.prime)
    aug = np.concatenate([b.data, np.eye(m, dtype=np.uint64)], axis=1)
    r, _ = kernels.rref_destructive(aug, np.uint64(b.prime), b.cols)
    return FieldMatrix(aug[r:, b.cols :].copy(), b.prime)


def proj_rank_gain(desired: FieldMatrix, interference: FieldMatrix) -> int:
    """Dimension of the image of the desired column span on the orthogonal
    complement of the interference span: rank[D | I] - rank[I]."""
    desired._check_prime(interference)
    if desired.rows != interference.rows:
        raise errors.ConfigError("row count mismatch")
    if interference.cols == 0:
        return desired.rank()
    return rank_of(desired, interference) - interference.rank()


class RowBasis:
    """Incremental row-space basis over F_p for greedy independence checks.

    insert() reduces the candidate against the current basis and keeps it
    only if a nonzero remainder survives.
    """

    def __init__(self, width: int, prime: int = DEFAULT_PRIME):
        self.width = width
        self.prime = np.uint64(prime)
        self._rows: list[np.ndarray] = []  # normalized, leading entry 1
        self._pivots: list[int] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, row) -> np.ndarray:
        from ._kernels_numpy import _mulmod_vec, _submod_vec

        p = self.prime
        r = np.asarray(row, np.uint64) % p
        for piv, base in zip(self._pivots, self._rows):
            f = r[piv]
            if f != 0:
                r = _submod_vec(r, _mulmod_vec(np.uint64(f), base, p), p)
        return r

    def insert(self, row) -> bool:
        """Add the row if independent of the basis; return True if added."""
        from ._kernels_numpy import _mulmod_vec

        r = self.reduce(row)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        inv = np.uint64(pow(int(r[piv]), int(self.prime) - 2, int(self.prime)))
        self._rows.append(_mulmod_vec(r, inv, self.prime))
        self._pivots.append(piv)
        return True
