"""Benchmark the numba lattice-sum kernels against the pure-numpy fallback.

Times the three hot kernels on representative workloads (genus-3 jet boxes,
genus-2 value boxes, the genus-1 double series) and prints per-call timings,
the speedup, and the worst cross-backend deviation.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from thetaforms import kernels
from thetaforms.siegel import random_siegel_point


def _time_call(fn, args, repeats):
    fn(*args)  # warm up (and trigger jit compilation on the numba side)
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        for _ in range(repeats):
            out = fn(*args)
        best = min(best, (time.perf_counter() - start) / repeats)
    return best, out


def _deviation(a, b):
    if isinstance(a, tuple):
        return max(_deviation(x, y) for x, y in zip(a, b))
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def build_cases():
    cases = []

    pt3 = random_siegel_point(3, 1)
    disp3, starts3 = kernels.shell_displacements(3, 8)
    u = np.array([0.5, 0.0, 0.5])
    z = np.zeros(3, dtype=np.complex128)
    cases.append((
        "theta2_jet  g=3 R=8 (4913 pts)",
        "theta2_jet",
        (disp3, starts3, np.zeros(3), u, z, pt3.tau),
        200,
    ))

    pt2 = random_siegel_point(2, 2)
    disp2, starts2 = kernels.shell_displacements(2, 12)
    c1 = np.array([0.5, 0.5])
    y = np.full(2, 0.1 + 0.02j)
    cases.append((
        "theta_value g=2 R=12 (625 pts)",
        "theta_value",
        (disp2, starts2, np.zeros(2), c1, y, pt2.tau),
        2000,
    ))

    dispw, startsw = kernels.shell_displacements(2, 16)
    cases.append((
        "w_jet       R=16 (1089 pts)",
        "w_jet",
        (dispw, startsw, 0.25, 0.8),
        2000,
    ))
    return cases


def main():
    plain = kernels.numpy_kernels()
    jit = kernels.numba_kernels()
    print(f"active backend: {kernels.BACKEND}")
    if jit is None:
        print("numba unavailable; timing the numpy path only")

    header = f"{'case':34s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s} {'max dev':>10s}"
    print(header)
    print("-" * len(header))
    for label, name, args, repeats in build_cases():
        t_np, out_np = _time_call(plain[name], args, repeats)
        if jit is None:
            print(f"{label:34s} {t_np * 1e6:10.1f}us {'-':>12s} {'-':>9s} {'-':>10s}")
            continue
        t_jit, out_jit = _time_call(jit[name], args, repeats)
        dev = _deviation(out_np, out_jit)
        print(f"{label:34s} {t_np * 1e6:10.1f}us {t_jit * 1e6:10.1f}us "
              f"{t_np / t_jit:8.1f}x {dev:10.2e}")


if __name__ == "__main__":
    main()
