"""JIT-compiled F_p matrix kernels (rank, RREF, matmul).

All matrices are C-contiguous uint64 arrays with entries in [0, p).
Elimination uses first-nonzero pivoting; there is no magnitude concern in
exact arithmetic.  Row updates skip zero multipliers, which makes the
structured (identity-band) precoding matrices cheap to reduce.

For p = 2^61 - 1 the product of two residues is reduced with the split
trick below, staying inside uint64; other primes must be < 2^31 so that
a*b fits in 64 bits directly.
"""

import numpy as np
from numba import njit

_P61 = np.uint64((1 << 61) - 1)
_LO31 = np.uint64(0x7FFFFFFF)
_LO30 = np.uint64(0x3FFFFFFF)
_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U30 = np.uint64(30)
_U31 = np.uint64(31)
_U61 = np.uint64(61)


@njit(cache=True, inline="always")
def _mulmod(a, b, p):
    if p == _P61:
        ah = a >> _U31
        al = a & _LO31
        bh = b >> _U31
        bl = b & _LO31
        mid = al * bh + ah * bl
        r = ah * bh * _U2 + (mid >> _U30) + ((mid & _LO30) << _U31) + al * bl
        r = (r >> _U61) + (r & _P61)
        r = (r >> _U61) + (r & _P61)
        if r >= _P61:
            r -= _P61
        return r
    return (a * b) % p


@njit(cache=True, inline="always")
def _addmulmod(acc, f, x, p):
    v = acc + _mulmod(f, x, p)
    if v >= p:
        v -= p
    return v


@njit(cache=True, inline="always")
def _submulmod(acc, f, x, p):
    v = acc + p - _mulmod(f, x, p)
    if v >= p:
        v -= p
    return v


@njit(cache=True)
def _invmod(a, p):
    # Fermat: a^(p-2) mod p.
    e = p - _U2
    r = _U1
    b = a
    while e > _U0:
        if e & _U1:
            r = _mulmod(r, b, p)
        b = _mulmod(b, b, p)
        e >>= _U1
    return r


@njit(cache=True)
def rank_destructive(a, p):
    """Rank of *a* over F_p; *a* is overwritten with an echelon form."""
    m, n = a.shape
    maxr = m if m < n else n
    r = 0
    for col in range(n):
        if r == maxr:
            break
        piv = -1
        for i in range(r, m):
            if a[i, col] != _U0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(col, n):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _invmod(a[r, col], p)
        for j in range(col, n):
            a[r, j] = _mulmod(a[r, j], inv, p)
        for i in range(r + 1, m):
            f = a[i, col]
            if f != _U0:
                a[i, col] = _U0
                for j in range(col + 1, n):
                    a[i, j] = _submulmod(a[i, j], f, a[r, j], p)
        r += 1
    return r


@njit(cache=True)
def rref_destructive(a, p, npivot):
    """Reduced row echelon form with pivots restricted to the first *npivot*
    columns.  Row operations apply to the full width (augmented columns ride
    along).  Returns (rank, pivot_cols)."""
    m, n = a.shape
    pivot_cols = np.empty(min(m, npivot), np.int64)
    r = 0
    for col in range(npivot):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, col] != _U0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _invmod(a[r, col], p)
        for j in range(n):
            a[r, j] = _mulmod(a[r, j], inv, p)
        for i in range(m):
            if i != r:
                f = a[i, col]
                if f != _U0:
                    for j in range(n):
                        a[i, j] = _submulmod(a[i, j], f, a[r, j], p)
        pivot_cols[r] = col
        r += 1
    return r, pivot_cols[:r]


@njit(cache=True)
def matmul(a, b, p):
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), np.uint64)
    for i in range(m):
        for l in range(k):
            f = a[i, l]
            if f != _U0:
                for j in range(n):
                    out[i, j] = _addmulmod(out[i, j], f, b[l, j], p)
    return out


def warmup():
    """Trigger JIT compilation on tiny inputs."""
    p = _P61
    a = np.arange(6, dtype=np.uint64).reshape(2, 3) % p
    rank_destructive(a.copy(), p)
    rref_destructive(a.copy(), p, 3)
    matmul(a, a.T.copy(), p)
