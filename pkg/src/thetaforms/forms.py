"""The two canonical (1,1)-forms on the Siegel space, and the genus-1 separation.

Every form is reported as a Hermitian coefficient matrix in the independent
coordinates tau_ij with i >= j, under the fixed convention

    omega = (i/2) * sum_{I,J} H[I,J] dtau_I wedge conj(dtau_J).

In this convention the Fubini-Study pullback has H = Hessian of log w under
the Wirtinger derivatives d/dtau_I, d/dconj(tau_J), and the invariant metric
built from (Im tau)^-1 reduces to the rep-grouped four-index sum below, so
the two matrices compare entry by entry.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .linalg import hermitian_eigenvalues, hermitianize, lu_det_inverse
from .nullwert import enumerate_half_characteristics
from .siegel import SiegelPoint
from .theta import (
    DEFAULT_POLICY,
    TruncationPolicy,
    _box_for,
    _required_radius,
    second_order_jet,
)

PI = np.pi


@dataclass(frozen=True)
class IndexPairBasis:
    """Positions 1..N <-> pairs (i,j), 1 <= j <= i <= g, lexicographic (0-based here)."""

    g: int
    pairs: tuple

    @property
    def n(self):
        return len(self.pairs)


def pair_basis(g):
    return IndexPairBasis(g=g, pairs=tuple((i, j) for i in range(g) for j in range(i + 1)))


@dataclass(frozen=True)
class HermitianFormOnSiegel:
    """Coefficient matrix of a (1,1)-form over the independent-coordinate basis."""

    basis: IndexPairBasis
    matrix: np.ndarray = field(repr=False)

    def eigenvalues(self):
        return hermitian_eigenvalues(self.matrix)

    def min_eigenvalue(self):
        return float(self.eigenvalues()[0])

    def entry(self, pair_row, pair_col):
        row = self.basis.pairs.index(pair_row)
        col = self.basis.pairs.index(pair_col)
        return complex(self.matrix[row, col])


def _rep(pair):
    i, j = pair
    return ((i, j),) if i == j else ((i, j), (j, i))


def siegel_metric_form(tau):
    """Invariant-metric coefficient matrix built from Y = (Im tau)^-1.

    H[I,J] = sum over the symmetric representatives of I and J of Y_iu * Y_jv;
    this is the reduction of the full four-index sum to independent
    coordinates (dtau_ij and dtau_ji are the same coordinate).
    """
    basis = pair_basis(tau.g)
    _, y = lu_det_inverse(tau.tau.imag)
    y = y.real
    h = np.zeros((basis.n, basis.n), dtype=np.complex128)
    for r, pr in enumerate(basis.pairs):
        for c, pc in enumerate(basis.pairs):
            acc = 0.0
            for (i, j) in _rep(pr):
                for (u, v) in _rep(pc):
                    acc += y[i, u] * y[j, v]
            h[r, c] = acc
    return HermitianFormOnSiegel(basis=basis, matrix=hermitianize(h))


def _nullwert_jets(tau, policy):
    zero = np.zeros(tau.g, dtype=np.complex128)
    jets = [
        second_order_jet(np.array(alpha, dtype=np.float64) / 2.0, zero, tau, policy)
        for alpha in enumerate_half_characteristics(tau.g)
    ]
    w = float(sum(abs(jet.value) ** 2 for jet in jets))
    return jets, w


def theta_fs_form(tau, policy=DEFAULT_POLICY):
    """Fubini-Study pullback through the nullwert map, analytically.

    With w = sum_u |theta_u(0)|^2, d_I = dw/dtau_I and the mixed sums
    m_IJ = sum_u (dtau_I theta_u) conj(dtau_J theta_u), the coefficient is
    H[I,J] = (w m_IJ - d_I conj(d_J)) / w^2, positive semidefinite by
    Cauchy-Schwarz.
    """
    basis = pair_basis(tau.g)
    jets, w = _nullwert_jets(tau, policy)
    dt = np.array([[jet.dtau[i, j] for (i, j) in basis.pairs] for jet in jets])
    vals = np.array([jet.value for jet in jets])
    d = dt.T @ vals.conj()
    mixed = dt.T @ dt.conj()
    h = (w * mixed - np.outer(d, d.conj())) / (w * w)
    return HermitianFormOnSiegel(basis=basis, matrix=hermitianize(h))


def _frozen_w_evaluator(tau, policy):
    """log-w evaluator on a box committed at the base point.

    Freezing the box keeps the truncation tail a smooth function of the
    perturbation, so second differences see only rounding noise.
    """
    g = tau.g
    tight = TruncationPolicy(tol=min(policy.tol, 1e-14), max_radius=policy.max_radius)
    half = np.full(g, 0.5)
    _, disp, starts, _ = _box_for(tau, half, np.zeros(g, dtype=np.complex128), 2, tight, pad=1)
    m0 = np.zeros(g)
    zero = np.zeros(g, dtype=np.complex128)
    us = [np.array(alpha, dtype=np.float64) / 2.0 for alpha in enumerate_half_characteristics(g)]
    cache = {}

    def log_w(delta):
        key = delta.tobytes()
        if key not in cache:
            mat = 2.0 * (tau.tau + delta)
            w = 0.0
            for u in us:
                w += abs(kernels.theta_value(disp, starts, m0, u, zero, mat)) ** 2
            cache[key] = math.log(w)
        return cache[key]

    return log_w


def _fd_hessian_matrix(log_w, basis, g, h):
    """Raw stencil matrix of d^2 log w / dtau_I dconj(tau_J) at step h.

    Every entry is computed from its own stencil (no mirroring), so the
    Hermitian defect of the output measures stencil consistency.
    """

    def step(pair, imag):
        s = np.zeros((g, g), dtype=np.complex128)
        i, j = pair
        v = 1j * h if imag else h
        s[i, j] += v
        if i != j:
            s[j, i] += v
        return s

    f0 = log_w(np.zeros((g, g), dtype=np.complex128))

    def second(pa, ia, pb, ib):
        if pa == pb and ia == ib:
            sp = step(pa, ia)
            return (log_w(sp) - 2.0 * f0 + log_w(-sp)) / (h * h)
        sa, sb = step(pa, ia), step(pb, ib)
        return (log_w(sa + sb) - log_w(sa - sb) - log_w(-sa + sb) + log_w(-sa - sb)) / (4.0 * h * h)

    n = basis.n
    out = np.zeros((n, n), dtype=np.complex128)
    for r in range(n):
        for c in range(n):
            pr, pc = basis.pairs[r], basis.pairs[c]
            f_ss = second(pr, False, pc, False)
            f_tt = second(pr, True, pc, True)
            f_st = second(pr, False, pc, True)
            f_ts = second(pr, True, pc, False)
            out[r, c] = 0.25 * (f_ss + f_tt + 1j * (f_st - f_ts))
    return out


def theta_fs_form_fd(tau, h=1e-3, policy=DEFAULT_POLICY):
    """Finite-difference twin of :func:`theta_fs_form` (test oracle).

    Central Wirtinger second differences of the scalar log w, Richardson
    extrapolated from steps h and h/2, then symmetrized.
    """
    if not 1e-4 <= h <= 1e-2:
        raise ValueError("h must lie in [1e-4, 1e-2]")
    basis = pair_basis(tau.g)
    log_w = _frozen_w_evaluator(tau, policy)
    coarse = _fd_hessian_matrix(log_w, basis, tau.g, h)
    fine = _fd_hessian_matrix(log_w, basis, tau.g, h / 2.0)
    raw = (4.0 * fine - coarse) / 3.0
    return HermitianFormOnSiegel(basis=basis, matrix=(raw + raw.conj().T) / 2.0)


def theta_coefficients(tau, policy=DEFAULT_POLICY):
    """Coefficient matrix of the theta-derived second-derivative pairing:
    (1 / 2w) sum_u conj(theta_u) * hess_z theta_u, symmetric g x g."""
    jets, w = _nullwert_jets(tau, policy)
    acc = np.zeros((tau.g, tau.g), dtype=np.complex128)
    for jet in jets:
        acc += np.conj(jet.value) * jet.hess_z
    return acc / (2.0 * w)


def hodge_coefficients(tau):
    """Coefficient matrix of the Hodge-theoretic pairing: -pi (Im tau)^-1."""
    _, y = lu_det_inverse(tau.tau.imag)
    return -PI * y.real.astype(np.complex128)


def structure_difference(tau, policy=DEFAULT_POLICY):
    """Pointwise difference between the theta and Hodge coefficient matrices."""
    return theta_coefficients(tau, policy) - hodge_coefficients(tau)


def imag_inverse_dbar(tau):
    """Analytic d (Im tau)^{ij} / d conj(tau_uv) over the independent coordinates.

    Returns an (N, g, g) array indexed by the basis position of (u, v); the
    u > v entries pick up both symmetric placements of the coordinate.
    """
    basis = pair_basis(tau.g)
    _, y = lu_det_inverse(tau.tau.imag)
    y = y.real
    out = np.empty((basis.n, tau.g, tau.g), dtype=np.complex128)
    for r, (u, v) in enumerate(basis.pairs):
        block = np.outer(y[:, u], y[v, :])
        if u != v:
            block = block + np.outer(y[:, v], y[u, :])
        out[r] = -0.5j * block
    return out


def imag_inverse_dbar_fd(tau, h=1e-6):
    """Central-difference twin of :func:`imag_inverse_dbar` (test oracle)."""
    basis = pair_basis(tau.g)
    y_mat = tau.tau.imag
    out = np.empty((basis.n, tau.g, tau.g), dtype=np.complex128)
    for r, (u, v) in enumerate(basis.pairs):
        s = np.zeros((tau.g, tau.g))
        s[u, v] += h
        if u != v:
            s[v, u] += h
        _, plus = lu_det_inverse(y_mat + s)
        _, minus = lu_det_inverse(y_mat - s)
        # real perturbations of tau leave Im tau fixed, so only the imaginary
        # direction contributes: dG/dconj(tau) = (i/2) * dG/dh along Im tau
        out[r] = 0.5j * (plus.real - minus.real) / (2.0 * h)
    return out


def genus1_constants(radius=12):
    """The three lattice constants sum e^{-pi m^2} * {1, m^2, m^4}."""
    ms = range(-radius, radius + 1)
    a = math.fsum(math.exp(-PI * m * m) for m in ms)
    b = math.fsum(m * m * math.exp(-PI * m * m) for m in ms)
    c = math.fsum(m ** 4 * math.exp(-PI * m * m) for m in ms)
    return a, b, c


@dataclass(frozen=True)
class Genus1Record:
    """One comparison row on the genus-1 upper half-plane."""

    z: complex
    w: float
    w_x: float
    w_y: float
    w_xx: float
    w_yy: float
    lhs: float
    rhs: float
    coeff_theta: float
    coeff_siegel: float
    ratio: float


# largest term weight in the w-jet on shell s is pi^2 (m^2+n^2)^2 <= 4 pi^2 s^4
_W_WEIGHT_COEF = 4.0 * PI * PI
_W_WEIGHT_DEG = 4


def genus1_record(z, policy=DEFAULT_POLICY):
    """Evaluate the double series w and its derivatives at z = x + iy.

    lhs/rhs are the two sides of the pointwise comparison between the scaled
    forms: lhs = w (w_xx + w_yy) - w_x^2 - w_y^2 and rhs = w^2 / (2 y^2); the
    coefficient columns scale the two Hermitian coefficients by 8 pi and pi.
    """
    z = complex(z)
    x, y = z.real, z.imag
    if y <= 0.0:
        raise ValueError("Im z must be positive")
    radius = _required_radius(y, 0.0, policy.tol, 2, _W_WEIGHT_COEF, _W_WEIGHT_DEG,
                              policy.max_radius)
    disp, starts = kernels.shell_displacements(2, radius)
    w, w_x, w_y, w_xx, w_yy = (float(t) for t in kernels.w_jet(disp, starts, x, y))
    if w <= 0.0:
        raise ValueError("series value must be positive")
    lhs = w * (w_xx + w_yy) - w_x * w_x - w_y * w_y
    rhs = w * w / (2.0 * y * y)
    coeff_theta = 2.0 * PI * lhs / (w * w)   # 8 pi times Hess log w / 4
    coeff_siegel = PI / (y * y)
    return Genus1Record(
        z=z, w=w, w_x=w_x, w_y=w_y, w_xx=w_xx, w_yy=w_yy,
        lhs=lhs, rhs=rhs,
        coeff_theta=coeff_theta, coeff_siegel=coeff_siegel,
        ratio=coeff_theta / coeff_siegel,
    )


def block_embed(z, tau_prime):
    """Block-diagonal point with z in the leading slot and tau_prime after it."""
    z = complex(z)
    g = tau_prime.g + 1
    mat = np.zeros((g, g), dtype=np.complex128)
    mat[0, 0] = z
    mat[1:, 1:] = tau_prime.tau
    return SiegelPoint.from_matrix(mat)


def block_pullback_residuals(z, tau_prime, policy=DEFAULT_POLICY):
    """Restriction defect of both forms along the block embedding.

    Only the leading coordinate varies along the embedding, so the pullback
    of each form is its ((1,1),(1,1)) entry at the block point; both are
    compared against the genus-1 coefficient at z.  Returns the pair of
    absolute differences (theta side, metric side).
    """
    big = block_embed(z, tau_prime)
    small = SiegelPoint.from_matrix(np.array([[z]], dtype=np.complex128))
    corner = (0, 0)
    theta_resid = abs(
        theta_fs_form(big, policy).entry(corner, corner)
        - theta_fs_form(small, policy).entry(corner, corner)
    )
    siegel_resid = abs(
        siegel_metric_form(big).entry(corner, corner)
        - siegel_metric_form(small).entry(corner, corner)
    )
    return float(theta_resid), float(siegel_resid)
