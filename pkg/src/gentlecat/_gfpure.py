"""Dense linear algebra over a prime field (numpy fallback backend).

Matrices are 2-d int64 arrays; entries are reduced mod p on entry.  All
routines are exact.  The compiled backend in _gfcore exposes the same three
functions.
"""

import numpy as np


def _inv_mod(a, p):
    return pow(int(a), p - 2, p)


def rref(A, p):
    """Reduced row echelon form of A over GF(p).

    Returns (R, pivots) where pivots is the tuple of pivot column indices.
    """
    R = np.array(A, dtype=np.int64) % p
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = (R[r] * _inv_mod(R[r, c], p)) % p
        col = R[:, c].copy()
        col[r] = 0
        if np.any(col):
            R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, tuple(pivots)


def rank(A, p):
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2 or A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p):
    """Basis of the right kernel of A over GF(p), one vector per row.

    Returns an int64 array of shape (nullity, ncols).
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("nullspace expects a 2-d array")
    nrows, ncols = A.shape
    if ncols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for j, c in enumerate(pivots):
            basis[k, c] = (-R[j, f]) % p
    return basis
