"""The Siegel upper half-space, Sp(2g,Z), and its action on points and characteristics.

Genus 1 through 4 are supported.  Symplectic matrices are stored as integer
blocks and validated exactly; base points keep an exactly symmetric ``tau``
(the upper triangle is rebuilt from the lower one at construction).
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import lu_det_inverse, min_eigenvalue

MAX_GENUS = 4

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Committed 64-bit mixing generator.

    All pseudo-random test data in the package flows through this generator
    so derived values are reproducible bit-for-bit on any platform.
    """

    def __init__(self, seed):
        self._state = int(seed) & _MASK64

    def next_u64(self):
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self):
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform_sym(self):
        """Uniform double in [-1, 1)."""
        return 2.0 * self.uniform() - 1.0


def _check_genus(g):
    if not 1 <= g <= MAX_GENUS:
        raise ValueError(f"genus must be in 1..{MAX_GENUS}, got {g}")


def _frozen(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SiegelPoint:
    """A g x g complex symmetric matrix with positive definite imaginary part."""

    g: int
    tau: np.ndarray = field(repr=False)

    @classmethod
    def from_matrix(cls, m):
        """Build from any square complex matrix; only the lower triangle is read."""
        m = np.asarray(m, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("square matrix required")
        g = m.shape[0]
        _check_genus(g)
        low = np.tril(m)
        tau = low + np.tril(m, -1).T
        if min_eigenvalue(tau.imag) <= 0.0:
            raise ValueError("imaginary part is not positive definite")
        return cls(g, _frozen(tau))

    def im_min_eigenvalue(self):
        return min_eigenvalue(self.tau.imag)


@dataclass(frozen=True)
class SymplecticMatrix:
    """Integer blocks (a b; c d) with the symplectic identity checked exactly."""

    g: int
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)
    d: np.ndarray = field(repr=False)

    @classmethod
    def from_blocks(cls, a, b, c, d):
        blocks = [np.asarray(x, dtype=np.int64) for x in (a, b, c, d)]
        g = blocks[0].shape[0]
        _check_genus(g)
        for blk in blocks:
            if blk.shape != (g, g):
                raise ValueError("all blocks must be g x g")
        m = np.block([[blocks[0], blocks[1]], [blocks[2], blocks[3]]])
        if not np.array_equal(m.T @ _standard_j(g) @ m, _standard_j(g)):
            raise ValueError("blocks do not satisfy the symplectic identity")
        return cls(g, *(_frozen(blk) for blk in blocks))

    def matrix(self):
        return np.block([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other):
        if self.g != other.g:
            raise ValueError("genus mismatch")
        p = self.matrix() @ other.matrix()
        g = self.g
        return SymplecticMatrix.from_blocks(p[:g, :g], p[:g, g:], p[g:, :g], p[g:, g:])


def _standard_j(g):
    i = np.eye(g, dtype=np.int64)
    z = np.zeros((g, g), dtype=np.int64)
    return np.block([[z, -i], [i, z]])


@dataclass(frozen=True)
class RealCharacteristic:
    """A pair of real g-vectors; values only depend on them modulo Z^g."""

    c1: np.ndarray = field(repr=False)
    c2: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, c1, c2):
        c1 = np.asarray(c1, dtype=np.float64).reshape(-1)
        c2 = np.asarray(c2, dtype=np.float64).reshape(-1)
        if c1.shape != c2.shape:
            raise ValueError("characteristic halves must have equal length")
        if not (np.all(np.isfinite(c1)) and np.all(np.isfinite(c2))):
            raise ValueError("characteristic entries must be finite")
        return cls(_frozen(c1), _frozen(c2))

    @property
    def g(self):
        return self.c1.shape[0]


def standard_generators(g):
    """The inversion J = (0 -I; I 0) and the symmetric elementary translations."""
    _check_genus(g)
    i = np.eye(g, dtype=np.int64)
    z = np.zeros((g, g), dtype=np.int64)
    gens = [SymplecticMatrix.from_blocks(z, -i, i, z)]
    for k in range(g):
        for l in range(k, g):
            e = np.zeros((g, g), dtype=np.int64)
            e[k, l] = 1
            e[l, k] = 1
            gens.append(SymplecticMatrix.from_blocks(i, e, z, i))
    return gens


def mobius_action(m, pt):
    """(a tau + b)(c tau + d)^-1, re-symmetrized to kill rounding asymmetry."""
    if m.g != pt.g:
        raise ValueError("genus mismatch")
    num = m.a @ pt.tau + m.b
    _, den_inv = lu_det_inverse(m.c @ pt.tau + m.d)
    x = num @ den_inv
    return SiegelPoint.from_matrix((x + x.T) / 2.0)


def cocycle_det(m, pt):
    """det(c tau + d)."""
    if m.g != pt.g:
        raise ValueError("genus mismatch")
    det, _ = lu_det_inverse(m.c @ pt.tau + m.d)
    return det


# Convention for the induced action on characteristics.  Of the two block
# layouts found in the literature, only this one keeps the squared-modulus
# transformation law |theta[M.ch](0; M(tau))|^2 = |det(c tau + d)| |theta[ch](0; tau)|^2
# on generator words with non-symmetric blocks (e.g. T.J.T); the transposed
# variant fails it outright.  tests/test_siegel.py re-runs that selection check.
CHAR_TRANSFORM_CONVENTION = "direct"


def transform_characteristic(m, ch):
    """Action of a symplectic matrix on a real characteristic pair."""
    if m.g != ch.g:
        raise ValueError("genus mismatch")
    a = m.a.astype(np.float64)
    b = m.b.astype(np.float64)
    c = m.c.astype(np.float64)
    d = m.d.astype(np.float64)
    n1 = d @ ch.c1 - c @ ch.c2 + 0.5 * np.diag(c @ d.T)
    n2 = -b @ ch.c1 + a @ ch.c2 + 0.5 * np.diag(a @ b.T)
    return RealCharacteristic.of(n1, n2)


def random_siegel_point(g, seed):
    """tau = A + iB with A symmetric uniform in [-1,1] and B = QQ^t + I/2.

    Entry draw order is fixed (A lower triangle row-major, then Q row-major),
    so the output is identical for identical (g, seed) on every platform.
    """
    _check_genus(g)
    rng = SplitMix64(seed)
    a = np.zeros((g, g))
    for i in range(g):
        for j in range(i + 1):
            a[i, j] = rng.uniform_sym()
            a[j, i] = a[i, j]
    q = np.zeros((g, g))
    for i in range(g):
        for j in range(g):
            q[i, j] = rng.uniform_sym()
    b = q @ q.T + 0.5 * np.eye(g)
    return SiegelPoint.from_matrix(a + 1j * b)
