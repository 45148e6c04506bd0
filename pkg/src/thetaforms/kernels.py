"""Lattice-sum kernels behind every theta evaluation.

Two interchangeable implementations live here:

* numba ``@njit`` loops with per-term Kahan accumulation in shell order
  (the default whenever numba imports), and
* a vectorized pure-numpy fallback that sums each infinity-norm shell with
  ``np.sum`` and Kahan-folds the shell partials in the same order.

Selection happens once at import time from the environment variable
``THETAFORMS_BACKEND``: ``numba``, ``numpy``, or ``auto`` (default).  Both
sets remain importable for side-by-side benchmarking via
:func:`numpy_kernels` / :func:`numba_kernels`.
"""

import importlib.util
import itertools
import os

import numpy as np

PI = np.pi

_DISP_CACHE = {}


def shell_displacements(g, radius):
    """Integer box offsets ordered by increasing infinity norm.

    Returns ``(disp, starts)`` where ``disp`` is a float (P, g) array of
    lattice offsets (shells 0..radius, lexicographic inside a shell) and
    ``starts[s]:starts[s+1]`` slices out shell ``s``.  Cached per (g, radius).
    """
    key = (g, radius)
    cached = _DISP_CACHE.get(key)
    if cached is None:
        rows = []
        starts = [0]
        for s in range(radius + 1):
            shell = [p for p in itertools.product(range(-s, s + 1), repeat=g)
                     if max(abs(x) for x in p) == s]
            shell.sort()
            rows.extend(shell)
            starts.append(len(rows))
        disp = np.array(rows, dtype=np.float64).reshape(len(rows), g)
        disp.flags.writeable = False
        cached = (disp, np.array(starts, dtype=np.int64))
        _DISP_CACHE[key] = cached
    return cached


# ---------------------------------------------------------------------------
# implementation bodies (plain python; compiled by numba when selected)
# ---------------------------------------------------------------------------

def _theta_value_impl(disp, m0, c1, y, tau):
    """sum over the box of exp(i pi n^t tau n + 2 pi i n . y), n = m0 + disp + c1."""
    npts, g = disp.shape
    n = np.empty(g, dtype=np.float64)
    acc = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for p in range(npts):
        for i in range(g):
            n[i] = m0[i] + disp[p, i] + c1[i]
        quad = 0.0 + 0.0j
        lin = 0.0 + 0.0j
        for i in range(g):
            row = 0.0 + 0.0j
            for j in range(g):
                row += tau[i, j] * n[j]
            quad += n[i] * row
            lin += n[i] * y[i]
        term = np.exp(1j * PI * quad + 2j * PI * lin)
        t = term - comp
        s = acc + t
        comp = (s - acc) - t
        acc = s
    return acc


def _theta2_jet_impl(disp, m0, u, z, tau):
    """Second-order theta jet at z: value, z-gradient, z-Hessian, tau-derivatives.

    Term weights: 1, 4*pi*i*n_k, -16*pi^2*n_i*n_j, and 2*pi*i*(2 - delta_ij)*n_i*n_j
    for the independent coordinates tau_ij with i >= j (off-diagonal entries of
    tau enter the quadratic form twice).  Each of the four accumulators runs
    its own Kahan compensation so the heat-equation residual measures rounding.
    """
    npts, g = disp.shape
    n = np.empty(g, dtype=np.float64)
    val = 0.0 + 0.0j
    val_c = 0.0 + 0.0j
    grad = np.zeros(g, dtype=np.complex128)
    grad_c = np.zeros(g, dtype=np.complex128)
    hess = np.zeros((g, g), dtype=np.complex128)
    hess_c = np.zeros((g, g), dtype=np.complex128)
    dtau = np.zeros((g, g), dtype=np.complex128)
    dtau_c = np.zeros((g, g), dtype=np.complex128)
    for p in range(npts):
        for i in range(g):
            n[i] = m0[i] + disp[p, i] + u[i]
        quad = 0.0 + 0.0j
        lin = 0.0 + 0.0j
        for i in range(g):
            row = 0.0 + 0.0j
            for j in range(g):
                row += tau[i, j] * n[j]
            quad += n[i] * row
            lin += n[i] * z[i]
        term = np.exp(2j * PI * quad + 4j * PI * lin)

        t = term - val_c
        s = val + t
        val_c = (s - val) - t
        val = s
        for k in range(g):
            gterm = 4j * PI * n[k] * term
            t = gterm - grad_c[k]
            s = grad[k] + t
            grad_c[k] = (s - grad[k]) - t
            grad[k] = s
        for i in range(g):
            for j in range(i + 1):
                pair = n[i] * n[j] * term
                hterm = -16.0 * PI * PI * pair
                t = hterm - hess_c[i, j]
                s = hess[i, j] + t
                hess_c[i, j] = (s - hess[i, j]) - t
                hess[i, j] = s
                if i == j:
                    dterm = 2j * PI * pair
                else:
                    dterm = 4j * PI * pair
                t = dterm - dtau_c[i, j]
                s = dtau[i, j] + t
                dtau_c[i, j] = (s - dtau[i, j]) - t
                dtau[i, j] = s
    for i in range(g):
        for j in range(i):
            hess[j, i] = hess[i, j]
            dtau[j, i] = dtau[i, j]
    return val, grad, hess, dtau


def _w_jet_impl(disp, x, y):
    """Double lattice sum sum_{m,n} exp(2 pi i x m n - pi y (m^2+n^2)) with
    first/second x- and y-derivatives, accumulated term-wise (all real)."""
    npts = disp.shape[0]
    out = np.zeros(5, dtype=np.float64)
    comp = np.zeros(5, dtype=np.float64)
    terms = np.empty(5, dtype=np.float64)
    for p in range(npts):
        m = disp[p, 0]
        n = disp[p, 1]
        mn = m * n
        sq = m * m + n * n
        amp = np.exp(-PI * y * sq)
        ang = 2.0 * PI * x * mn
        cb = np.cos(ang)
        sb = np.sin(ang)
        w0 = amp * cb
        terms[0] = w0
        terms[1] = -2.0 * PI * mn * amp * sb
        terms[2] = -PI * sq * w0
        terms[3] = -4.0 * PI * PI * mn * mn * w0
        terms[4] = PI * PI * sq * sq * w0
        for k in range(5):
            t = terms[k] - comp[k]
            s = out[k] + t
            comp[k] = (s - out[k]) - t
            out[k] = s
    return out


# ---------------------------------------------------------------------------
# numpy fallback: vectorized terms, per-shell np.sum, Kahan across shells
# ---------------------------------------------------------------------------

def _kahan_fold(partials):
    acc = np.zeros_like(partials[0])
    comp = np.zeros_like(partials[0])
    for part in partials:
        t = part - comp
        s = acc + t
        comp = (s - acc) - t
        acc = s
    return acc


def _shell_partials(values, starts):
    return [values[starts[s]:starts[s + 1]].sum(axis=0) for s in range(len(starts) - 1)]


def theta_value_numpy(disp, starts, m0, c1, y, tau):
    n = m0 + disp + c1
    quad = np.einsum("pi,ij,pj->p", n, tau, n)
    terms = np.exp(1j * PI * quad + 2j * PI * (n @ y))
    return complex(_kahan_fold(_shell_partials(terms, starts)))


def theta2_jet_numpy(disp, starts, m0, u, z, tau):
    g = disp.shape[1]
    n = m0 + disp + u
    quad = np.einsum("pi,ij,pj->p", n, tau, n)
    terms = np.exp(2j * PI * quad + 4j * PI * (n @ z))
    pair = n[:, :, None] * n[:, None, :] * terms[:, None, None]
    dtau_weight = 2j * PI * (2.0 - np.eye(g))
    val = complex(_kahan_fold(_shell_partials(terms, starts)))
    grad = _kahan_fold(_shell_partials(4j * PI * n * terms[:, None], starts))
    hess = _kahan_fold(_shell_partials(-16.0 * PI * PI * pair, starts))
    dtau = _kahan_fold(_shell_partials(dtau_weight[None, :, :] * pair, starts))
    return val, grad, hess, dtau


def w_jet_numpy(disp, starts, x, y):
    m = disp[:, 0]
    n = disp[:, 1]
    mn = m * n
    sq = m * m + n * n
    amp = np.exp(-PI * y * sq)
    ang = 2.0 * PI * x * mn
    w0 = amp * np.cos(ang)
    terms = np.stack(
        (
            w0,
            -2.0 * PI * mn * amp * np.sin(ang),
            -PI * sq * w0,
            -4.0 * PI * PI * mn * mn * w0,
            PI * PI * sq * sq * w0,
        ),
        axis=1,
    )
    return _kahan_fold(_shell_partials(terms, starts))


def numpy_kernels():
    return {
        "theta_value": theta_value_numpy,
        "theta2_jet": theta2_jet_numpy,
        "w_jet": w_jet_numpy,
    }


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

_NUMBA_KERNELS = None


def _numba_importable():
    return importlib.util.find_spec("numba") is not None


def numba_kernels():
    """Compile-on-first-call numba kernel set, or None when numba is absent.

    The jitted bodies take the same arguments as the numpy set minus
    ``starts`` (they accumulate per term, shells are implicit in the
    displacement ordering); thin wrappers align the signatures.
    """
    global _NUMBA_KERNELS
    if _NUMBA_KERNELS is None:
        if not _numba_importable():
            _NUMBA_KERNELS = False
        else:
            from numba import njit

            theta_value_jit = njit(cache=True, nogil=True)(_theta_value_impl)
            theta2_jet_jit = njit(cache=True, nogil=True)(_theta2_jet_impl)
            w_jet_jit = njit(cache=True, nogil=True)(_w_jet_impl)
            _NUMBA_KERNELS = {
                "theta_value": lambda disp, starts, m0, c1, y, tau: theta_value_jit(disp, m0, c1, y, tau),
                "theta2_jet": lambda disp, starts, m0, u, z, tau: theta2_jet_jit(disp, m0, u, z, tau),
                "w_jet": lambda disp, starts, x, y: w_jet_jit(disp, x, y),
            }
    return _NUMBA_KERNELS or None


def _select_backend(choice, numba_available):
    choice = (choice or "auto").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not numba_available:
            raise ImportError("THETAFORMS_BACKEND=numba but numba is not importable")
        return "numba"
    if choice == "auto":
        return "numba" if numba_available else "numpy"
    raise ValueError(f"unrecognized THETAFORMS_BACKEND value: {choice!r}")


BACKEND = _select_backend(os.environ.get("THETAFORMS_BACKEND", "auto"), _numba_importable())

if BACKEND == "numba":
    _active = numba_kernels()
else:
    _active = numpy_kernels()

theta_value = _active["theta_value"]
theta2_jet = _active["theta2_jet"]
w_jet = _active["w_jet"]
