"""Small dense complex matrix kernel.

Everything here operates on matrices of dimension at most a few tens; the
LU path is hand-rolled so that determinants and inverses are bitwise
reproducible across BLAS builds, eigenvalues go through LAPACK (eigvalsh).
"""

import numpy as np

_MAX_LU_DIM = 32
_MAX_EIG_DIM = 16
_PIVOT_FLOOR = 1e-300


class SingularMatrixError(ArithmeticError):
    """A pivot fell below the representable floor during elimination."""


def lu_det_inverse(a):
    """Determinant and inverse of a square complex matrix via partial-pivot LU.

    Returns ``(det, inv)``; raises :class:`SingularMatrixError` when a pivot
    magnitude drops below 1e-300.  The product ``a @ inv`` recovers the
    identity to ~1e-12 for the well-conditioned matrices this package meets.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    n = a.shape[0]
    if n > _MAX_LU_DIM:
        raise ValueError(f"dimension {n} exceeds limit {_MAX_LU_DIM}")
    lu = a.copy()
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < _PIVOT_FLOOR:
            raise SingularMatrixError(f"pivot {abs(lu[p, k]):.3e} below floor at column {k}")
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    det = sign * np.prod(np.diag(lu))
    # forward/back substitution against the permuted identity
    inv = np.zeros((n, n), dtype=np.complex128)
    inv[np.arange(n), perm] = 1.0
    for k in range(n):
        inv[k + 1:] -= np.outer(lu[k + 1:, k], inv[k])
    for k in range(n - 1, -1, -1):
        inv[k] /= lu[k, k]
        inv[:k] -= np.outer(lu[:k, k], inv[k])
    return complex(det), inv


def min_eigenvalue(s):
    """Smallest eigenvalue of a real symmetric matrix.

    Negative output signals "not positive definite"; it is not an error.
    Non-symmetric input is rejected.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError("square matrix required")
    if not np.array_equal(s, s.T):
        raise ValueError("matrix is not exactly symmetric")
    return float(np.linalg.eigvalsh(s)[0])


def hermitian_eigenvalues(h):
    """Real eigenvalues of a Hermitian matrix, ascending."""
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("square matrix required")
    if h.shape[0] > _MAX_EIG_DIM:
        raise ValueError(f"dimension {h.shape[0]} exceeds limit {_MAX_EIG_DIM}")
    return np.linalg.eigvalsh(h)


def hermitianize(h):
    """Mirror the lower triangle with conjugation; the diagonal is made real."""
    h = np.asarray(h, dtype=np.complex128)
    out = np.tril(h, -1)
    out = out + out.conj().T
    out[np.diag_indices_from(out)] = np.diag(h).real
    return out
