"""Characteristic combinatorics, nullwert vectors, and the exact addition matrix.

Index orderings are frozen here and shared by every consumer:

* half-integer classes: lexicographic over {0,1}^g tuples (2^g entries);
* even characteristic pairs (eps, delta) with eps.delta even: lexicographic
  on the concatenated tuple (2^(g-1)(2^g+1) entries);
* unordered index pairs: all diagonal pairs (k,k) first, then off-diagonal
  (k,l) with k < l lexicographically.  The addition matrix rows and the
  Veronese image share this ordering, so the two sides of the addition
  formula compare componentwise.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .siegel import RealCharacteristic, transform_characteristic
from .theta import DEFAULT_POLICY, second_order_value, theta_char_eval

_SQRT2 = np.sqrt(2.0)


class DegenerateNullwertError(RuntimeError):
    """Every component of a nullwert vector came out negligible.

    The nullwert map has no base points, so this signals numerical breakdown
    rather than a mathematical zero.
    """


class EvenCharacteristicError(ValueError):
    """A pair failed the evenness constraint eps . delta = 0 (mod 2)."""


def enumerate_half_characteristics(g):
    """All 2^g classes in (1/2)Z^g / Z^g as {0,1}-tuples, lexicographic."""
    return list(itertools.product((0, 1), repeat=g))


def enumerate_even_characteristics(g):
    """All (eps, delta) in (Z_2^g)^2 with eps . delta even, lexicographic."""
    out = []
    for eps in itertools.product((0, 1), repeat=g):
        for dlt in itertools.product((0, 1), repeat=g):
            if sum(e * d for e, d in zip(eps, dlt)) % 2 == 0:
                out.append((eps, dlt))
    return out


def unordered_pairs(n):
    """Frozen ordering of unordered index pairs: diagonal first, then k < l."""
    return [(k, k) for k in range(n)] + [(k, l) for k in range(n) for l in range(k + 1, n)]


@dataclass(frozen=True)
class AdditionMatrix:
    """Exact matrix with entries sign * sqrt(2)^p / 2^g.

    Rows are indexed by unordered pairs of half-integer classes, columns by
    even characteristics; ``sign`` and ``sqrt2_pow`` hold the exact data, the
    float form materializes only at comparison boundaries.
    """

    g: int
    sign: np.ndarray = field(repr=False)       # int8, 0 where the entry vanishes
    sqrt2_pow: np.ndarray = field(repr=False)  # uint8, 0 or 1
    denominator: int = 0

    def as_float(self):
        return self.sign * np.power(_SQRT2, self.sqrt2_pow) / self.denominator

    def orthogonality_defect(self):
        """Exact defect of M^t M - I / 2^g.

        Splitting M = (A + sqrt(2) B) / 2^g by sqrt(2)-power, the product is
        (A^t A + 2 B^t B + sqrt(2)(A^t B + B^t A)) / 4^g, all in int64.
        Returns the largest absolute deviation of the rational part from
        2^g * I together with the largest absolute irrational coefficient;
        (0, 0) means exact orthogonality up to the scalar.
        """
        a = np.where(self.sqrt2_pow == 0, self.sign, 0).astype(np.int64)
        b = np.where(self.sqrt2_pow == 1, self.sign, 0).astype(np.int64)
        rational = a.T @ a + 2 * (b.T @ b)
        irrational = a.T @ b + b.T @ a
        target = (2 ** self.g) * np.eye(rational.shape[0], dtype=np.int64)
        return int(np.max(np.abs(rational - target))), int(np.max(np.abs(irrational)))


def addition_matrix(g):
    """The exact addition-formula matrix for genus g."""
    half = enumerate_half_characteristics(g)
    evens = enumerate_even_characteristics(g)
    pairs = unordered_pairs(len(half))
    sign = np.zeros((len(pairs), len(evens)), dtype=np.int8)
    sqrt2_pow = np.zeros((len(pairs), len(evens)), dtype=np.uint8)
    for r, (i, j) in enumerate(pairs):
        alpha = np.array(half[i], dtype=np.int64)
        alpha2 = np.array(half[j], dtype=np.int64)
        total = (alpha + alpha2) % 2
        for col, (eps, sigma) in enumerate(evens):
            if not np.array_equal(total, np.array(eps, dtype=np.int64)):
                continue
            sign[r, col] = -1 if int(alpha @ np.array(sigma, dtype=np.int64)) % 2 else 1
            sqrt2_pow[r, col] = 0 if not total.any() else 1
    return AdditionMatrix(g=g, sign=sign, sqrt2_pow=sqrt2_pow, denominator=2 ** g)


def veronese2(vec):
    """Quadratic Veronese image on the frozen pair ordering.

    Diagonal pairs carry lambda_k^2, off-diagonal ones sqrt(2) lambda_k lambda_l,
    so the squared norm of the image is exactly the square of |lambda|^2.
    """
    vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
    pairs = unordered_pairs(vec.shape[0])
    out = np.empty(len(pairs), dtype=np.complex128)
    for r, (k, l) in enumerate(pairs):
        out[r] = vec[k] * vec[l] if k == l else _SQRT2 * vec[k] * vec[l]
    return out


def theta_nullwert(tau, policy=DEFAULT_POLICY):
    """Vector of second-order theta constants, indexed by the half-integer classes."""
    half = enumerate_half_characteristics(tau.g)
    zero = np.zeros(tau.g, dtype=np.complex128)
    out = np.empty(len(half), dtype=np.complex128)
    for k, alpha in enumerate(half):
        out[k] = second_order_value(np.array(alpha, dtype=np.float64) / 2.0, zero, tau, policy)
    if np.max(np.abs(out)) < 1e-10:
        raise DegenerateNullwertError("all nullwert components negligible; evaluation broke down")
    return out


def theta_squared_map(tau, policy=DEFAULT_POLICY):
    """Squared theta constants over the even characteristics.

    Squaring kills the sign ambiguity of integer characteristic shifts, so
    each component only depends on the class of (eps, delta).
    """
    evens = enumerate_even_characteristics(tau.g)
    zero = np.zeros(tau.g, dtype=np.complex128)
    out = np.empty(len(evens), dtype=np.complex128)
    for k, (eps, dlt) in enumerate(evens):
        ch = RealCharacteristic.of(np.array(eps, dtype=np.float64) / 2.0,
                                   np.array(dlt, dtype=np.float64) / 2.0)
        out[k] = theta_char_eval(ch, zero, tau, policy) ** 2
    return out


def transform_even_characteristic(m, even):
    """Induced action on even characteristics: transform, double, reduce mod 2."""
    eps, dlt = even
    if len(eps) != m.g:
        raise ValueError("genus mismatch")
    if sum(e * d for e, d in zip(eps, dlt)) % 2:
        raise EvenCharacteristicError(f"input pair {even} is not even")
    ch = RealCharacteristic.of(np.array(eps, dtype=np.float64) / 2.0,
                               np.array(dlt, dtype=np.float64) / 2.0)
    moved = transform_characteristic(m, ch)
    doubled1 = 2.0 * moved.c1
    doubled2 = 2.0 * moved.c2
    if not (np.allclose(doubled1, np.round(doubled1)) and np.allclose(doubled2, np.round(doubled2))):
        raise EvenCharacteristicError("transform left the half-integer lattice")
    new_eps = tuple(int(x) % 2 for x in np.round(doubled1))
    new_dlt = tuple(int(x) % 2 for x in np.round(doubled2))
    if sum(e * d for e, d in zip(new_eps, new_dlt)) % 2:
        raise EvenCharacteristicError(f"image pair {(new_eps, new_dlt)} is not even")
    return (new_eps, new_dlt)


def addition_formula_residual(tau, policy=DEFAULT_POLICY):
    """Relative residual of the addition identity at one base point.

    Compares the exact matrix applied to the squared-constants vector against
    the Veronese image of the nullwert vector; the identity is an equality of
    vectors, not merely projective.
    """
    if tau.g > 3:
        raise ValueError("supported for genus 1..3")
    lhs = addition_matrix(tau.g).as_float() @ theta_squared_map(tau, policy)
    rhs = veronese2(theta_nullwert(tau, policy))
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))
