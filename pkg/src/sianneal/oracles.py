"""Brute-force reference oracles.

Every derived expectation in the test suite is anchored to one of these
deliberately-naive routes: dense trapezoid quadrature, Richardson finite
differences, RK4 integration, dense-grid extrema, scan-and-bisect root
finding, interval maxima, and an O(n^3) all-pairs bottleneck recursion.
They share no code with the production paths they check.  The ``oracle``
CLI subcommand dumps the reference values into a goldens directory.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "trapezoid_integral",
    "finite_difference_jet",
    "ode_rk4",
    "grid_extrema",
    "critical_points_1d_scan",
    "gaussian_partition",
    "gaussian_density_moment",
    "ou_spectral_gap",
    "interval_minimax_1d",
    "bottleneck_all_pairs",
    "write_goldens",
]


def trapezoid_integral(f, a, b, n=1_000_001):
    xs = np.linspace(a, b, n)
    return float(np.trapezoid(f(xs), xs))


def finite_difference_jet(f, x, h=1e-4):
    """(value, first, second derivative) by Richardson-extrapolated central
    differences; independent of any closed-form derivative."""
    def d1(hh):
        return (f(x + hh) - f(x - hh)) / (2 * hh)

    def d2(hh):
        return (f(x + hh) - 2 * f(x) + f(x - hh)) / (hh * hh)

    g = (4 * d1(h / 2) - d1(h)) / 3
    s = (4 * d2(h / 2) - d2(h)) / 3
    return float(f(x)), float(g), float(s)


def ode_rk4(rhs, y0, t0, t1, n_steps):
    """Classic RK4 for dy/dt = rhs(t, y)."""
    y = np.asarray(y0, dtype=float).copy()
    h = (t1 - t0) / n_steps
    t = t0
    for _ in range(n_steps):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


def grid_extrema(f, a, b, n=200_001):
    xs = np.linspace(a, b, n)
    v = f(xs)
    return float(np.min(v)), float(np.max(v))


def critical_points_1d_scan(fprime, a, b, n=200_001):
    """Roots of f' by dense sign scan + bisection (brentq)."""
    xs = np.linspace(a, b, n)
    g = fprime(xs)
    roots = []
    for i in np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)[0]:
        roots.append(brentq(fprime, xs[i], xs[i + 1], xtol=1e-13))
    for i in np.nonzero(g == 0.0)[0]:
        roots.append(float(xs[i]))
    out = []
    for r in sorted(roots):
        if not out or abs(r - out[-1]) > 1e-8:
            out.append(r)
    return out


def gaussian_partition(eps2, curvature=1.0, d=1):
    """int exp(-2 (c|x|^2/2)/eps2) dx = (pi eps2 / c)^{d/2}."""
    return (math.pi * eps2 / curvature) ** (d / 2.0)


def gaussian_density_moment(eps2, curvature=1.0):
    """Second moment of the 1D Gibbs density for V = c x^2/2: eps2/(2c)."""
    return eps2 / (2.0 * curvature)


def ou_spectral_gap(curvature=1.0):
    """Gap of -(eps^2/2) d'' + c x d/dx is c, independent of eps."""
    return curvature


def interval_minimax_1d(f, x, z, n=100_001):
    """In one dimension the optimal bottleneck path is the straight
    interval: H(x, z) = max f on [min, max]."""
    lo, hi = min(x, z), max(x, z)
    xs = np.linspace(lo, hi, n)
    return float(np.max(f(xs)))


def bottleneck_all_pairs(values, neighbors8=True):
    """All-pairs minimax heights on a small grid by the Floyd-Warshall
    recursion H_ij = min(H_ij, max(H_ik, H_kj)); O(n^3), oracle-sized."""
    vals = np.asarray(values, dtype=float)
    if vals.ndim == 1:
        n = vals.size
        coords = [(i,) for i in range(n)]
        def adjacent(p, q):
            return abs(p[0] - q[0]) == 1
    else:
        nx, ny = vals.shape
        coords = [(i, j) for i in range(nx) for j in range(ny)]
        def adjacent(p, q):
            di, dj = abs(p[0] - q[0]), abs(p[1] - q[1])
            far = max(di, dj)
            return far == 1 if neighbors8 else (di + dj == 1)
    n = len(coords)
    if n > 2500:
        raise ValueError("bottleneck oracle is for coarse grids only")
    big = np.full((n, n), np.inf)
    flat = np.array([vals[c] for c in coords])
    for i in range(n):
        big[i, i] = flat[i]
        for j in range(n):
            if i != j and adjacent(coords[i], coords[j]):
                big[i, j] = max(flat[i], flat[j])
    for k in range(n):
        big = np.minimum(big, np.maximum(big[:, k][:, None], big[k, :][None, :]))
    return coords, big


def write_goldens(out_dir):
    """Recompute the oracle reference values and write them as JSON."""
    from .potentials import make_potential
    from .gibbs import GibbsMeasure

    os.makedirs(out_dir, exist_ok=True)
    dw = make_potential("double_well")
    sp = make_potential("spline_twowell", 2.0, 8.0, 1.0)

    dwv = dw.value
    goldens = {
        "double_well_jet_at_1": finite_difference_jet(dwv, 1.0),
        "double_well_jet_at_0": finite_difference_jet(dwv, 0.0),
        "double_well_critical_points": critical_points_1d_scan(dw.grad, -2.5, 2.5),
        "spline_twowell_2_8_1_critical_points": critical_points_1d_scan(sp.grad, -2.5, 2.5),
        "spline_twowell_2_8_1_barrier_value": float(sp.value(0.0)),
        "double_well_osc_chi_grid": float(np.subtract(*reversed(grid_extrema(dw.chi_value, -1.1, 1.1)))),
        "gaussian_partition_eps2_0.01": gaussian_partition(0.01),
        "double_well_Z_eps2_0.05_trapezoid":
            trapezoid_integral(lambda x: np.exp(-2 * dwv(x) / 0.05), -3, 3),
        "double_well_gamma_second_moment_trapezoid":
            trapezoid_integral(lambda x: x * x * np.exp(-2 * dwv(x)), -4, 4) /
            trapezoid_integral(lambda x: np.exp(-2 * dwv(x)), -4, 4),
        "double_well_minimax_m1_to_p1": interval_minimax_1d(dwv, -1.0, 1.0),
        "ou_gap": ou_spectral_gap(1.0),
    }
    path = os.path.join(out_dir, "goldens.json")
    with open(path, "w") as fh:
        json.dump(goldens, fh, indent=2, sort_keys=True)
    return path
