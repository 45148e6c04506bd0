"""Shared test helpers: independent brute-force oracles for the lattice sums.

The oracles below are deliberately naive (plain box loops, no shell ordering,
no compensation, no certified radius) so they share no code path with the
package evaluators they check.
"""

import itertools

import numpy as np

PI = np.pi


def brute_theta(c1, c2, z, tau_mat, radius=10):
    """First-order theta by direct summation over [-radius, radius]^g."""
    c1 = np.asarray(c1, dtype=np.float64)
    c2 = np.asarray(c2, dtype=np.float64)
    z = np.asarray(z, dtype=np.complex128)
    g = c1.shape[0]
    total = 0.0 + 0.0j
    center = [int(x) for x in np.round(c1)]
    for m in itertools.product(range(-radius, radius + 1), repeat=g):
        n = np.array(m, dtype=np.float64) - center + c1
        total += np.exp(1j * PI * (n @ tau_mat @ n) + 2j * PI * (n @ (z + c2)))
    return total


def brute_theta2(u, z, tau_mat, radius=10):
    """Second-order theta by direct summation."""
    u = np.asarray(u, dtype=np.float64)
    z = np.asarray(z, dtype=np.complex128)
    g = u.shape[0]
    total = 0.0 + 0.0j
    center = [int(x) for x in np.round(u)]
    for m in itertools.product(range(-radius, radius + 1), repeat=g):
        n = np.array(m, dtype=np.float64) - center + u
        total += np.exp(2j * PI * (n @ tau_mat @ n) + 4j * PI * (n @ z))
    return total
