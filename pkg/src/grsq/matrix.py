"""Dense linear algebra over a Field.

Matrices and vectors are 2-D / 1-D numpy int64 arrays with entries in
[0, q).  All functions are pure: inputs are never modified.
"""

from __future__ import annotations

import numpy as np

from .gf import Field


class SingularMatrixError(ArithmeticError):
    """Raised when a matrix that must be invertible is not."""


class DimensionError(ValueError):
    pass


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _bitslices(F: Field, A: np.ndarray) -> list:
    return [((A >> i) & 1).astype(np.float64) for i in range(F.l)]


def _binary_matmul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    # polynomial product of bit-planes, then reduction by the modulus
    l = F.l
    rows, cols = A.shape[0], B.shape[1]
    Ab = _bitslices(F, A)
    Bcat = np.hstack(_bitslices(F, B))
    acc = np.zeros((2 * l - 1, rows, cols), dtype=np.int64)
    for i in range(l):
        prod = (Ab[i] @ Bcat).astype(np.int64) & 1
        for j in range(l):
            acc[i + j] ^= prod[:, j * cols:(j + 1) * cols]
    out = np.zeros((rows, cols), dtype=np.int64)
    for d in range(2 * l - 2, -1, -1):
        out ^= acc[d] << d
    for d in range(2 * l - 2, l - 1, -1):
        hit = (out >> d) & 1
        out ^= hit * (F.modulus_poly << (d - l))
    return out


def matmul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if F.is_binary:
        if F.l == 1:
            return (A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) & 1
        return _binary_matmul(F, A, B)
    q = F.q
    bound = A.shape[1] * (q - 1) ** 2
    if bound < 2 ** 53:
        return (A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % q
    if bound < 2 ** 62:
        return (A @ B) % q
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        out = (out + np.outer(A[:, j], B[j]) % q) % q
    return out


def mat_vec(F: Field, A: np.ndarray, v: np.ndarray, side: str = "right") -> np.ndarray:
    """A @ v (side='right') or v @ A (side='left')."""
    v = np.asarray(v, dtype=np.int64)
    if side == "right":
        return matmul(F, A, v.reshape(-1, 1)).reshape(-1)
    if side == "left":
        return matmul(F, v.reshape(1, -1), A).reshape(-1)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def outer(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return F.vmul(np.asarray(a)[:, None], np.asarray(b)[None, :])


def add(F: Field, A, B):
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    return F.vadd(A, B)


def sub(F: Field, A, B):
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    return F.vsub(A, B)


def rref(F: Field, A: np.ndarray, ncols: int | None = None):
    """Reduced row-echelon form and pivot columns.

    Pivots are searched in column order, taking the first nonzero entry at
    or below the current row.  With ``ncols`` only the leading columns are
    used as pivot candidates (the rest are carried along).
    """
    M = np.array(A, dtype=np.int64, copy=True)
    rows, cols = M.shape
    limit = cols if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        piv = int(M[r, c])
        if piv != 1:
            M[r] = F.vmul(M[r], F.inv(piv))
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit] = F.vsub(M[hit], outer(F, col[hit], M[r]))
        pivots.append(c)
        r += 1
    return M, pivots


def rank(F: Field, A: np.ndarray) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(F, A)[1])


def invert(F: Field, A: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse; raises SingularMatrixError."""
    A = np.asarray(A, dtype=np.int64)
    n, m = A.shape
    if n != m:
        raise DimensionError(f"cannot invert a {n}x{m} matrix")
    M, piv = rref(F, np.hstack([A, identity(n)]), ncols=n)
    if len(piv) < n:
        raise SingularMatrixError(f"matrix has rank {len(piv)} < {n}")
    return M[:, n:]


def systematic_form(F: Field, H: np.ndarray):
    """Return (U @ H, U) with U the inverse of the leading square block of H."""
    H = np.asarray(H, dtype=np.int64)
    r = H.shape[0]
    U = invert(F, H[:, :r])
    Hsys = matmul(F, U, H)
    return Hsys, U


def nullspace(F: Field, A: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right kernel {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return identity(cols)
    M, piv = rref(F, A)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = F.neg(int(M[row, f]))
    return basis


def random_matrix(F: Field, rows: int, cols: int, rng) -> np.ndarray:
    return F.random(rng, size=(rows, cols))


def random_nonsingular(F: Field, n: int, rng) -> np.ndarray:
    while True:
        A = random_matrix(F, n, n, rng)
        if rank(F, A) == n:
            return A


def weight(v) -> int:
    return int(np.count_nonzero(v))
