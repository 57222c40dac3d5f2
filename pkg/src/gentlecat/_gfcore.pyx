# cython: boundscheck=False, wraparound=False, cdivision=True
"""Dense linear algebra over a prime field (compiled backend).

Same interface as _gfpure: rref, rank, nullspace on int64 matrices.  The
workload profile is many small eliminations, so the win over numpy is mostly
per-call overhead and the row loops.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef long long _inv_mod(long long a, long long p):
    cdef long long result = 1
    cdef long long base = a % p
    cdef long long e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def rref(A, long long p):
    """Reduced row echelon form of A over GF(p).

    Returns (R, pivots) where pivots is the tuple of pivot column indices.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=2] R = np.ascontiguousarray(
        np.array(A, dtype=np.int64) % p)
    cdef Py_ssize_t nrows = R.shape[0]
    cdef Py_ssize_t ncols = R.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef long long inv, f, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if R[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(ncols):
                tmp = R[r, j]
                R[r, j] = R[pr, j]
                R[pr, j] = tmp
        inv = _inv_mod(R[r, c], p)
        for j in range(ncols):
            R[r, j] = (R[r, j] * inv) % p
        for i in range(nrows):
            if i != r and R[i, c] != 0:
                f = R[i, c]
                for j in range(ncols):
                    tmp = (R[i, j] - f * R[r, j]) % p
                    if tmp < 0:
                        tmp += p
                    R[i, j] = tmp
        pivots.append(c)
        r += 1
    return R, tuple(pivots)


def rank(A, long long p):
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2 or A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, long long p):
    """Basis of the right kernel of A over GF(p), one vector per row."""
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("nullspace expects a 2-d array")
    cdef Py_ssize_t nrows = A.shape[0]
    cdef Py_ssize_t ncols = A.shape[1]
    if ncols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(A, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    cdef Py_ssize_t k, j
    for k in range(len(free)):
        basis[k, free[k]] = 1
        for j in range(len(pivots)):
            basis[k, pivots[j]] = (-R[j, free[k]]) % p
    return basis
