"""Theta series with real characteristics and second-order theta jets.

Series are summed over an infinity-norm lattice box centered at ``-round(c1)``
whose radius comes from a conservative Gaussian-tail bound; evaluation fails
loudly instead of truncating silently when the required radius exceeds the
policy cap.

The first-order series is

    theta[c1, c2](z; tau) = sum_m exp(pi i (m+c1)^t tau (m+c1) + 2 pi i (m+c1).(z+c2)),

and the second-order one doubles the quadratic form:

    theta_u(z; tau) = sum_m exp(2 pi i (m+u)^t tau (m+u) + 4 pi i (m+u).z).

Second-order jets carry value, z-gradient, z-Hessian and the derivatives with
respect to the independent coordinates tau_ij (i >= j); the term weight
2 pi i (2 - delta_ij) (m+u)_i (m+u)_j makes the heat equation

    4 pi i (1 + delta_ij) d theta_u / d tau_ij = d^2 theta_u / dz_i dz_j

hold term by term, which the test suite checks down to rounding.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .linalg import lu_det_inverse

PI = np.pi

_IM_Z_LIMIT = 10.0


class TruncationOverflowError(RuntimeError):
    """The certified lattice box would exceed the policy radius cap."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Absolute tail tolerance and the hard cap on the box radius."""

    tol: float = 1e-12
    max_radius: int = 40

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if self.max_radius < 1:
            raise ValueError("max_radius must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class ThetaJet:
    """Value and derivatives of a second-order theta function at one point."""

    value: complex
    grad_z: np.ndarray = field(repr=False)
    hess_z: np.ndarray = field(repr=False)
    dtau: np.ndarray = field(repr=False)


def _required_radius(lam, c_inf, tol, g, weight_coef, weight_deg, max_radius):
    """Smallest R whose tail bound falls below tol.

    The tail over shells s > R is bounded by the first term times a geometric
    closing factor: each shell contributes at most 2g(2s+1)^(g-1) points, every
    point at most weight_coef*(s+c_inf+1)^weight_deg * exp(-pi lam (s - c2)^2)
    with c2 = sqrt(g)*c_inf bounding the 2-norm offset of the Gaussian center.
    Monotone in tol and in lam by construction.
    """
    if lam <= 0.0:
        raise ValueError("positive definite imaginary part required")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    c2 = math.sqrt(g) * c_inf
    r = max(1, math.ceil(c2))
    while r <= max_radius:
        s = r + 1
        first = (
            2.0 * g * (2.0 * s + 1.0) ** (g - 1)
            * weight_coef * (s + c_inf + 1.0) ** weight_deg
            * math.exp(-PI * lam * (s - c2) ** 2)
        )
        ratio = (
            ((2.0 * s + 3.0) / (2.0 * s + 1.0)) ** (g - 1)
            * ((s + c_inf + 2.0) / (s + c_inf + 1.0)) ** weight_deg
            * math.exp(-PI * lam * (2.0 * (s - c2) + 1.0))
        )
        if ratio < 1.0 and first / (1.0 - ratio) <= tol:
            return r
        r += 1
    raise TruncationOverflowError(
        f"tail bound stays above {tol:.3e} within radius cap {max_radius}"
    )


def truncation_radius(im_tau_min_eig, c1_inf_norm, tol, g, max_radius=40):
    """Certified box radius for a unit-weight theta sum."""
    return _required_radius(im_tau_min_eig, c1_inf_norm, tol, g, 1.0, 0, max_radius)


def _box_for(pt, c1, z, order, policy, weight_coef=1.0, weight_deg=0, pad=0):
    """Radius + displacement box for a sum whose quadratic decay is
    exp(-order * pi * n^t Im(tau) n) with linear drift from Im z.

    Completing the square moves the Gaussian center by Y^-1 Im z and scales
    the whole sum by exp(order * pi * Im z . Y^-1 Im z); both corrections are
    folded into the bound before the radius search.
    """
    g = pt.g
    im_z = np.asarray(z, dtype=np.complex128).imag
    if im_z.size and np.max(np.abs(im_z)) > _IM_Z_LIMIT:
        raise ValueError(f"|Im z| exceeds supported bound {_IM_Z_LIMIT}")
    lam = pt.im_min_eigenvalue()
    if np.any(im_z):
        _, y_inv = lu_det_inverse(pt.tau.imag)
        shift = y_inv.real @ im_z
        scale = math.exp(order * PI * float(im_z @ shift))
        shift_inf = float(np.max(np.abs(shift)))
    else:
        scale = 1.0
        shift_inf = 0.0
    m0 = -np.round(np.asarray(c1, dtype=np.float64))
    frac_inf = float(np.max(np.abs(c1 + m0))) if g else 0.0
    radius = _required_radius(
        order * lam,
        frac_inf + shift_inf,
        policy.tol / scale,
        g,
        weight_coef,
        weight_deg,
        policy.max_radius,
    ) + pad
    disp, starts = kernels.shell_displacements(g, radius)
    return m0, disp, starts, radius


def _as_z(z, g):
    z = np.asarray(z, dtype=np.complex128).reshape(-1)
    if z.shape != (g,):
        raise ValueError(f"z must be a length-{g} vector")
    return z


def theta_char_eval(ch, z, tau, policy=DEFAULT_POLICY):
    """First-order theta value; absolute tail error at most ``policy.tol``."""
    value, _ = theta_char_eval_with_radius(ch, z, tau, policy)
    return value


def theta_char_eval_with_radius(ch, z, tau, policy=DEFAULT_POLICY):
    if ch.g != tau.g:
        raise ValueError("genus mismatch")
    z = _as_z(z, tau.g)
    m0, disp, starts, radius = _box_for(tau, ch.c1, z, 1, policy)
    value = kernels.theta_value(disp, starts, m0, ch.c1, z + ch.c2, tau.tau)
    return complex(value), radius


# jet term weights are bounded by 16 pi^2 (s + c + 1)^2 on shell s, which
# dominates the gradient and tau-derivative weights as well
_JET_WEIGHT_COEF = 16.0 * PI * PI
_JET_WEIGHT_DEG = 2


def second_order_jet(u, z, tau, policy=DEFAULT_POLICY):
    """Jet of theta_u at ``z``: value, grad_z, hess_z, and dtau (independent coords)."""
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    z = _as_z(z, tau.g)
    if u.shape != (tau.g,):
        raise ValueError(f"u must be a length-{tau.g} vector")
    m0, disp, starts, _ = _box_for(
        tau, u, z, 2, policy, weight_coef=_JET_WEIGHT_COEF, weight_deg=_JET_WEIGHT_DEG
    )
    val, grad, hess, dtau = kernels.theta2_jet(disp, starts, m0, u, z, tau.tau)
    return ThetaJet(complex(val), grad, hess, dtau)


def second_order_value(u, z, tau, policy=DEFAULT_POLICY):
    """Value of theta_u alone (the first-order kernel at doubled arguments)."""
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    z = _as_z(z, tau.g)
    m0, disp, starts, _ = _box_for(tau, u, z, 2, policy)
    value = kernels.theta_value(disp, starts, m0, u, 2.0 * z, 2.0 * tau.tau)
    return complex(value)


def second_order_box_radius(tau, policy=DEFAULT_POLICY):
    """Worst-case certified radius shared by all second-order constants at tau."""
    return _required_radius(
        2.0 * tau.im_min_eigenvalue(), 0.5, policy.tol, tau.g, 1.0, 0, policy.max_radius
    )


def _frozen_box_value(disp, starts, m0, u, z, tau_mat):
    # raw second-order value on a pre-committed box (used by stencils so the
    # truncation tail varies smoothly across nearby evaluation points)
    return kernels.theta_value(disp, starts, m0, u, 2.0 * z, 2.0 * tau_mat)


def finite_difference_jet(u, tau, h=1e-3, policy=DEFAULT_POLICY):
    """Stencil-based jet of theta_u at z = 0; the derivative oracle.

    Every derivative is a central difference of plain series *values*, with
    real- and imaginary-direction stencils combined into Wirtinger averages
    that cancel the leading O(h^2) error of each direction.  Only test suites
    should call this; the analytic path is :func:`second_order_jet`.
    """
    if not 1e-6 <= h <= 1e-3:
        raise ValueError("h must lie in [1e-6, 1e-3]")
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    g = tau.g
    if u.shape != (g,):
        raise ValueError(f"u must be a length-{g} vector")
    tight = TruncationPolicy(tol=min(policy.tol, 1e-14), max_radius=policy.max_radius)
    m0, disp, starts, _ = _box_for(
        tau, u, np.zeros(g, dtype=np.complex128), 2, tight,
        weight_coef=_JET_WEIGHT_COEF, weight_deg=_JET_WEIGHT_DEG, pad=1,
    )

    def f_z(dz):
        return _frozen_box_value(disp, starts, m0, u, dz, tau.tau)

    def f_tau(dt):
        return _frozen_box_value(
            disp, starts, m0, u, np.zeros(g, dtype=np.complex128), tau.tau + dt
        )

    zero = np.zeros(g, dtype=np.complex128)
    f0 = f_z(zero)

    plus_re = np.empty(g, dtype=np.complex128)
    minus_re = np.empty(g, dtype=np.complex128)
    plus_im = np.empty(g, dtype=np.complex128)
    minus_im = np.empty(g, dtype=np.complex128)
    grad = np.empty(g, dtype=np.complex128)
    for k in range(g):
        e = np.zeros(g, dtype=np.complex128)
        e[k] = 1.0
        plus_re[k] = f_z(h * e)
        minus_re[k] = f_z(-h * e)
        plus_im[k] = f_z(1j * h * e)
        minus_im[k] = f_z(-1j * h * e)
        d_re = (plus_re[k] - minus_re[k]) / (2.0 * h)
        d_im = (plus_im[k] - minus_im[k]) / (2.0 * h)
        grad[k] = 0.5 * (d_re - 1j * d_im)

    hess = np.empty((g, g), dtype=np.complex128)
    for k in range(g):
        d_rr = (plus_re[k] - 2.0 * f0 + minus_re[k]) / (h * h)
        d_ii = (plus_im[k] - 2.0 * f0 + minus_im[k]) / (h * h)
        hess[k, k] = 0.5 * (d_rr - d_ii)
    for i in range(g):
        for j in range(i):
            ei = np.zeros(g, dtype=np.complex128)
            ej = np.zeros(g, dtype=np.complex128)
            ei[i] = 1.0
            ej[j] = 1.0
            d_rr = (
                f_z(h * (ei + ej)) - f_z(h * (ei - ej))
                - f_z(h * (ej - ei)) + f_z(-h * (ei + ej))
            ) / (4.0 * h * h)
            d_ii = (
                f_z(1j * h * (ei + ej)) - f_z(1j * h * (ei - ej))
                - f_z(1j * h * (ej - ei)) + f_z(-1j * h * (ei + ej))
            ) / (4.0 * h * h)
            hess[i, j] = 0.5 * (d_rr - d_ii)
            hess[j, i] = hess[i, j]

    dtau = np.empty((g, g), dtype=np.complex128)
    for i in range(g):
        for j in range(i + 1):
            step = np.zeros((g, g), dtype=np.complex128)
            step[i, j] = 1.0
            step[j, i] = 1.0
            d_re = (f_tau(h * step) - f_tau(-h * step)) / (2.0 * h)
            d_im = (f_tau(1j * h * step) - f_tau(-1j * h * step)) / (2.0 * h)
            dtau[i, j] = 0.5 * (d_re - 1j * d_im)
            dtau[j, i] = dtau[i, j]

    return ThetaJet(complex(f0), grad, hess, dtau)
