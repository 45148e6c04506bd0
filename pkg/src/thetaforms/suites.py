"""Named verification suites behind the CLI.

Every suite draws its data from a committed 64-bit generator seeded from the
user seed and a per-suite constant, computes a scalar residual per case, and
reports the worst one against a frozen tolerance.  Identical (suite, g, seed)
always reproduces identical residuals bit for bit.
"""

import time
from dataclasses import dataclass

import numpy as np

from .forms import (
    block_embed,
    block_pullback_residuals,
    genus1_constants,
    imag_inverse_dbar,
    imag_inverse_dbar_fd,
)
from .nullwert import (
    addition_formula_residual,
    addition_matrix,
    enumerate_even_characteristics,
    enumerate_half_characteristics,
    theta_squared_map,
    veronese2,
)
from .siegel import (
    RealCharacteristic,
    SiegelPoint,
    SplitMix64,
    cocycle_det,
    mobius_action,
    random_siegel_point,
    standard_generators,
    transform_characteristic,
)
from .theta import TruncationPolicy, second_order_jet, second_order_value, theta_char_eval

PI = np.pi

DEFAULT_SEED = 1

# tight series policy so suite residuals measure identities, not truncation
_SUITE_POLICY = TruncationPolicy(tol=1e-13, max_radius=40)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    g: int
    cases: int
    max_residual: float
    tolerance: float
    passed: bool
    wall_time: float


def _rng_for(name, g, seed):
    return SplitMix64(seed * 1_000_003 + _SUITE_IDS[name] * 1009 + g)


def _random_points(g, count, rng):
    return [random_siegel_point(g, rng.next_u64()) for _ in range(count)]


def _random_strip_z(rng):
    # x in [-1/2, 1/2], y in [1/2, 2]
    return complex(0.5 * rng.uniform_sym(), 0.5 + 1.5 * rng.uniform())


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def _suite_addition(g, rng):
    n_tau = {1: 5, 2: 5, 3: 2}[g]
    residuals = [
        addition_formula_residual(pt, _SUITE_POLICY)
        for pt in _random_points(g, n_tau, rng)
    ]
    return residuals


def _suite_orthogonality(g, rng):
    rational, irrational = addition_matrix(g).orthogonality_defect()
    return [float(rational), float(irrational)]


def _suite_veronese(g, rng):
    residuals = []
    dim = 2 ** g
    for _ in range(50):
        vec = np.array(
            [complex(rng.uniform_sym(), rng.uniform_sym()) for _ in range(dim)]
        )
        image = veronese2(vec)
        norm2 = float(np.sum(np.abs(vec) ** 2))
        residuals.append(abs(float(np.sum(np.abs(image) ** 2)) - norm2 ** 2) / norm2 ** 2)
    return residuals


def _suite_transform(g, rng):
    gens = standard_generators(g)
    evens = enumerate_even_characteristics(g)
    zero = np.zeros(g, dtype=np.complex128)
    residuals = []
    for pt in _random_points(g, 5, rng):
        base = {
            ev: theta_char_eval(
                RealCharacteristic.of(np.array(ev[0]) / 2.0, np.array(ev[1]) / 2.0),
                zero, pt, _SUITE_POLICY,
            )
            for ev in evens
        }
        for m in gens:
            moved_pt = mobius_action(m, pt)
            det = abs(cocycle_det(m, pt))
            for ev in evens:
                ch = RealCharacteristic.of(np.array(ev[0]) / 2.0, np.array(ev[1]) / 2.0)
                moved_ch = transform_characteristic(m, ch)
                lhs = abs(theta_char_eval(moved_ch, zero, moved_pt, _SUITE_POLICY)) ** 2
                rhs = det * abs(base[ev]) ** 2
                residuals.append(_rel(lhs, rhs))
    return residuals


def _suite_descent(g, rng):
    gens = standard_generators(g)
    residuals = []
    for pt in _random_points(g, 5, rng):
        w_here = float(np.sum(np.abs(theta_squared_map(pt, _SUITE_POLICY)) ** 2))
        for m in gens:
            moved = mobius_action(m, pt)
            det2 = abs(cocycle_det(m, pt)) ** 2
            w_moved = float(np.sum(np.abs(theta_squared_map(moved, _SUITE_POLICY)) ** 2))
            residuals.append(_rel(w_moved, det2 * w_here))
    return residuals


def _suite_heat(g, rng):
    zero = np.zeros(g, dtype=np.complex128)
    residuals = []
    for pt in _random_points(g, 5, rng):
        for alpha in enumerate_half_characteristics(g):
            jet = second_order_jet(np.array(alpha, dtype=np.float64) / 2.0, zero, pt,
                                   _SUITE_POLICY)
            for i in range(g):
                for j in range(i + 1):
                    lhs = 4j * PI * (1.0 + (i == j)) * jet.dtau[i, j]
                    residuals.append(
                        abs(lhs - jet.hess_z[i, j]) / (1.0 + abs(jet.hess_z[i, j]))
                    )
    return residuals


def _suite_parity_sign(g, rng):
    residuals = []
    for pt in _random_points(g, 3, rng):
        z = np.array(
            [complex(0.3 * rng.uniform_sym(), 0.3 * rng.uniform_sym()) for _ in range(g)]
        )
        for m1 in enumerate_half_characteristics(g):
            for m2 in enumerate_half_characteristics(g):
                ch = RealCharacteristic.of(np.array(m1) / 2.0, np.array(m2) / 2.0)
                base = theta_char_eval(ch, z, pt, _SUITE_POLICY)
                k1 = np.array([rng.next_u64() % 5 - 2 for _ in range(g)], dtype=np.float64)
                k2 = np.array([rng.next_u64() % 5 - 2 for _ in range(g)], dtype=np.float64)
                shifted = RealCharacteristic.of(np.array(m1) / 2.0 + k1, np.array(m2) / 2.0 + k2)
                sign = (-1.0) ** int(np.dot(m1, k2))
                residuals.append(
                    _rel(theta_char_eval(shifted, z, pt, _SUITE_POLICY), sign * base)
                )
                parity = (-1.0) ** int(np.dot(m1, m2))
                residuals.append(
                    _rel(theta_char_eval(ch, -z, pt, _SUITE_POLICY), parity * base)
                )
    return residuals


def _suite_coeff_paths(g, rng):
    zero = np.zeros(g, dtype=np.complex128)
    residuals = []
    for pt in _random_points(g, 5, rng):
        jets = [
            second_order_jet(np.array(alpha, dtype=np.float64) / 2.0, zero, pt, _SUITE_POLICY)
            for alpha in enumerate_half_characteristics(g)
        ]
        w = sum(abs(j.value) ** 2 for j in jets)
        hess_route = sum(np.conj(j.value) * j.hess_z for j in jets) / (2.0 * w)
        dtau_sum = sum(np.conj(j.value) * j.dtau for j in jets)
        heat_route = (2j * PI * (1.0 + np.eye(g)) / w) * dtau_sum
        for i in range(g):
            for j in range(i + 1):
                residuals.append(
                    abs(hess_route[i, j] - heat_route[i, j]) / (1.0 + abs(hess_route[i, j]))
                )
    return residuals


def _suite_inverse_derivative(g, rng):
    residuals = []
    for pt in _random_points(g, 3, rng):
        analytic = imag_inverse_dbar(pt)
        stencil = imag_inverse_dbar_fd(pt)
        residuals.append(
            float(np.max(np.abs(analytic - stencil) / (1.0 + np.abs(analytic))))
        )
    return residuals


def _suite_splitting(g, rng):
    residuals = []
    zero_small = np.zeros(1, dtype=np.complex128)
    zero_rest = np.zeros(g - 1, dtype=np.complex128)
    zero_big = np.zeros(g, dtype=np.complex128)
    for _ in range(5):
        z = _random_strip_z(rng)
        tau_prime = random_siegel_point(g - 1, rng.next_u64())
        big = block_embed(z, tau_prime)
        small = SiegelPoint.from_matrix(np.array([[z]], dtype=np.complex128))
        for alpha in enumerate_half_characteristics(g):
            u = np.array(alpha, dtype=np.float64) / 2.0
            whole = second_order_value(u, zero_big, big, _SUITE_POLICY)
            left = second_order_value(u[:1], zero_small, small, _SUITE_POLICY)
            right = second_order_value(u[1:], zero_rest, tau_prime, _SUITE_POLICY)
            residuals.append(_rel(whole, left * right))
    return residuals


def _suite_isometry(g, rng):
    residuals = []
    for _ in range(5):
        z = _random_strip_z(rng)
        tau_prime = random_siegel_point(g - 1, rng.next_u64())
        theta_resid, siegel_resid = block_pullback_residuals(z, tau_prime, _SUITE_POLICY)
        residuals.extend((theta_resid, siegel_resid))
    return residuals


_SUITES = {
    "addition": (_suite_addition, (1, 2, 3), {1: 1e-8, 2: 1e-8, 3: 1e-7}),
    "orthogonality": (_suite_orthogonality, (1, 2, 3, 4), {}),
    "veronese": (_suite_veronese, (1, 2, 3, 4), {}),
    "transform": (_suite_transform, (1, 2, 3, 4), {}),
    "descent": (_suite_descent, (1, 2, 3, 4), {}),
    "heat": (_suite_heat, (1, 2, 3, 4), {}),
    "parity-sign": (_suite_parity_sign, (1, 2, 3, 4), {}),
    "coeff-paths": (_suite_coeff_paths, (1, 2, 3, 4), {}),
    "inverse-derivative": (_suite_inverse_derivative, (1, 2, 3, 4), {}),
    "splitting": (_suite_splitting, (2, 3, 4), {}),
    "isometry": (_suite_isometry, (2, 3, 4), {}),
}

_DEFAULT_TOLERANCES = {
    "addition": 1e-7,
    "orthogonality": 0.0,
    "veronese": 1e-12,
    "transform": 1e-8,
    "descent": 1e-8,
    "heat": 1e-9,
    "parity-sign": 1e-10,
    "coeff-paths": 1e-9,
    "inverse-derivative": 1e-6,
    "splitting": 1e-10,
    "isometry": 1e-6,
}

_SUITE_IDS = {name: k for k, name in enumerate(_SUITES)}


def suite_names():
    return list(_SUITES)


def supported_genera(name):
    return _SUITES[name][1]


def suite_tolerance(name, g):
    per_g = _SUITES[name][2]
    return per_g.get(g, _DEFAULT_TOLERANCES[name])


def run_suite(name, g, seed=DEFAULT_SEED, tolerance=None):
    """Run one named suite at one genus; raises on unsupported combinations."""
    if name not in _SUITES:
        raise KeyError(name)
    fn, genera, _ = _SUITES[name]
    if g not in genera:
        raise ValueError(f"suite {name!r} supports genera {genera}, got g={g}")
    tol = suite_tolerance(name, g) if tolerance is None else tolerance
    start = time.perf_counter()
    residuals = fn(g, _rng_for(name, g, seed))
    elapsed = time.perf_counter() - start
    worst = float(max(residuals)) if residuals else 0.0
    return SuiteResult(
        suite=name,
        g=g,
        cases=len(residuals),
        max_residual=worst,
        tolerance=tol,
        passed=worst <= tol,
        wall_time=elapsed,
    )


def genus1_constants_report():
    """Constant-level checks reused by the CLI and the acceptance suite."""
    a, b, c = genus1_constants()
    return {
        "a": a,
        "b": b,
        "c": c,
        "a_minus_4pi_b": a - 4.0 * PI * b,
        "four_pi_c_minus_7b": 4.0 * PI * c - 7.0 * b,
    }
