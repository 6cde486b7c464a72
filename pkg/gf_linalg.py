"""Gaussian elimination over GF(2^w).

Exact arithmetic, so pivoting only needs a nonzero entry: the first one found
below the diagonal is swapped up. Rows are numpy vectors; each elimination
step updates every affected row in one vectorized operation.
"""

from typing import Optional

import numpy as np

from errors import DimensionError, SingularMatrixError
from gf import Field


def _as_matrix(a) -> np.ndarray:
    return np.array(a, dtype=np.int64, copy=True)


def try_solve(field: Field, a, b) -> Optional[np.ndarray]:
    """Solve A X = B for square A; None when A is singular.

    B may be a vector or a matrix of right-hand-side columns; the result has
    the same shape as B.
    """
    a = _as_matrix(a)
    b = _as_matrix(b)
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n or b.shape[0] != n:
        raise DimensionError(f"cannot solve system {a.shape} with right-hand side {b.shape}")

    for k in range(n):
        nz = np.flatnonzero(a[k:, k])
        if nz.size == 0:
            return None
        p = k + int(nz[0])
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]

        factor = field.inv(int(a[k, k]))
        a[k] = field.mul_arr(a[k], factor)
        b[k] = field.mul_arr(b[k], factor)

        col = a[:, k].copy()
        col[k] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] ^= field.mul_arr(col[rows, None], a[k][None, :])
            b[rows] ^= field.mul_arr(col[rows, None], b[k][None, :])

    return b[:, 0] if vector else b


def solve(field: Field, a, b) -> np.ndarray:
    x = try_solve(field, a, b)
    if x is None:
        raise SingularMatrixError("matrix is singular over GF(2^w)")
    return x


def inverse(field: Field, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return solve(field, a, np.eye(a.shape[0], dtype=np.int64))


def rank(field: Field, m) -> int:
    """Row rank via forward elimination."""
    a = _as_matrix(m)
    if a.ndim != 2:
        raise DimensionError(f"rank needs a matrix, got shape {a.shape}")
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = field.mul_arr(a[r], field.inv(int(a[r, c])))
        below = a[r + 1:, c].copy()
        idx = np.flatnonzero(below)
        if idx.size:
            a[r + 1 + idx] ^= field.mul_arr(below[idx, None], a[r][None, :])
        r += 1
    return r
