"""Pure-numpy fallback for the F_p matrix kernels.

Same contract as the JIT module: uint64 matrices, entries in [0, p),
destructive elimination with first-nonzero pivoting.  Row updates are
vectorized; the Mersenne-61 product reduction is the same uint64 split
trick, applied elementwise.
"""

import numpy as np

_P61 = np.uint64((1 << 61) - 1)
_LO31 = np.uint64(0x7FFFFFFF)
_LO30 = np.uint64(0x3FFFFFFF)


def _mulmod_vec(a, b, p):
    if p == _P61:
        ah = a >> np.uint64(31)
        al = a & _LO31
        bh = b >> np.uint64(31)
        bl = b & _LO31
        mid = al * bh + ah * bl
        r = (
            ah * bh * np.uint64(2)
            + (mid >> np.uint64(30))
            + ((mid & _LO30) << np.uint64(31))
            + al * bl
        )
        r = (r >> np.uint64(61)) + (r & _P61)
        r = (r >> np.uint64(61)) + (r & _P61)
        return np.where(r >= _P61, r - _P61, r)
    return (a * b) % p


def _submod_vec(a, b, p):
    v = a + (p - b)
    return np.where(v >= p, v - p, v)


def _invmod(a, p):
    return np.uint64(pow(int(a), int(p) - 2, int(p)))


def rank_destructive(a, p):
    p = np.uint64(p)
    m, n = a.shape
    maxr = min(m, n)
    r = 0
    for col in range(n):
        if r == maxr:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = _mulmod_vec(a[r], _invmod(a[r, col], p), p)
        below = a[r + 1 :, col]
        rows = np.nonzero(below)[0]
        if rows.size:
            f = below[rows][:, None]
            a[r + 1 + rows] = _submod_vec(
                a[r + 1 + rows], _mulmod_vec(f, a[r][None, :], p), p
            )
        r += 1
    return r


def rref_destructive(a, p, npivot):
    p = np.uint64(p)
    m, n = a.shape
    pivot_cols = []
    r = 0
    for col in range(npivot):
        if r == m:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = _mulmod_vec(a[r], _invmod(a[r, col], p), p)
        colvals = a[:, col]
        rows = np.nonzero(colvals)[0]
        rows = rows[rows != r]
        if rows.size:
            f = colvals[rows][:, None]
            a[rows] = _submod_vec(a[rows], _mulmod_vec(f, a[r][None, :], p), p)
        pivot_cols.append(col)
        r += 1
    return r, np.asarray(pivot_cols, dtype=np.int64)


def matmul(a, b, p):
    p = np.uint64(p)
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), np.uint64)
    for l in range(k):
        col = a[:, l]
        rows = np.nonzero(col)[0]
        if rows.size:
            prod = _mulmod_vec(col[rows][:, None], b[l][None, :], p)
            acc = out[rows] + prod
            out[rows] = np.where(acc >= p, acc - p, acc)
    return out


def warmup():
    pass
