"""Energy-landscape machinery: bottleneck (minimax) barrier heights on grid
graphs, the maximal height m(t) of the confined potential, and the spectrum
of the discretized one-dimensional generator.

The minimax height between nodes is computed exactly on the grid graph by a
best-first sweep that settles nodes in increasing bottleneck value (the
widest-path adaptation of Dijkstra); grid refinement controls the
approximation of the continuous path class.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

__all__ = [
    "GridGraph",
    "LandscapeReport",
    "build_grid",
    "path_energy",
    "bottleneck_sweep",
    "minimax_height",
    "maximal_height",
    "generator_spectrum_1d",
    "landscape_report",
]

MAX_NODES = 10_000_000


@dataclass
class GridGraph:
    """Uniform grid with node values; 2-neighbor (1D) or 8-neighbor (2D)."""
    xs: np.ndarray
    ys: np.ndarray | None
    values: np.ndarray          # [nx] or [nx, ny]
    h: float

    @property
    def dim(self):
        return 1 if self.ys is None else 2

    @property
    def n_nodes(self):
        return self.values.size

    def snap(self, point):
        if self.dim == 1:
            return int(np.argmin(np.abs(self.xs - float(np.atleast_1d(point)[0]))))
        p = np.atleast_1d(point)
        return (int(np.argmin(np.abs(self.xs - p[0]))),
                int(np.argmin(np.abs(self.ys - p[1]))))


def _confined_value(potential, a):
    if math.isinf(a):
        return potential.value
    if potential.dim == 1:
        return lambda x: potential.value(x) + np.asarray(x) ** 2 / a
    return lambda x: potential.value(x) + np.sum(np.asarray(x) ** 2, axis=-1) / a


def build_grid(potential, a=math.inf, h=1e-3, box=None, margin=1.0):
    """Grid over the compact search region K = supp(chi) + margin."""
    if box is None:
        r = potential.support_radius + margin
        box = (-r, r)
    lo, hi = box
    n = int(round((hi - lo) / h)) + 1
    if potential.dim == 1:
        if n > MAX_NODES:
            raise ValueError("grid too large")
        xs = lo + np.arange(n) * h
        vals = _confined_value(potential, a)(xs)
        return GridGraph(xs, None, vals, h)
    if n * n > MAX_NODES:
        raise ValueError("grid too large")
    xs = lo + np.arange(n) * h
    gx, gy = np.meshgrid(xs, xs, indexing="ij")
    vals = _confined_value(potential, a)(np.stack([gx, gy], axis=-1))
    return GridGraph(xs, xs.copy(), vals, h)


def path_energy(grid, path_nodes):
    """Max node value along a connected node sequence."""
    nodes = list(path_nodes)
    if not nodes:
        raise ValueError("empty path")
    if grid.dim == 1:
        idx = np.asarray(nodes, dtype=int)
        if np.any(np.abs(np.diff(idx)) > 1):
            raise ValueError("path is not connected on the grid")
        return float(np.max(grid.values[idx]))
    vals = []
    prev = None
    for node in nodes:
        i, j = node
        if prev is not None and max(abs(i - prev[0]), abs(j - prev[1])) > 1:
            raise ValueError("path is not connected on the grid")
        vals.append(grid.values[i, j])
        prev = (i, j)
    return float(np.max(vals))


def bottleneck_sweep(grid, source):
    """Bottleneck value H(x, source) for every node x: the minimal over
    grid paths of the maximal node value, settled in increasing order."""
    vals = grid.values
    if grid.dim == 1:
        n = vals.size
        src = source if np.isscalar(source) else source[0]
        best = np.full(n, np.inf)
        done = np.zeros(n, dtype=bool)
        best[src] = vals[src]
        heap = [(vals[src], src)]
        while heap:
            b, i = heapq.heappop(heap)
            if done[i]:
                continue
            done[i] = True
            for j in (i - 1, i + 1):
                if 0 <= j < n and not done[j]:
                    cand = max(b, vals[j])
                    if cand < best[j]:
                        best[j] = cand
                        heapq.heappush(heap, (cand, j))
        return best
    nx, ny = vals.shape
    best = np.full((nx, ny), np.inf)
    done = np.zeros((nx, ny), dtype=bool)
    si, sj = source
    best[si, sj] = vals[si, sj]
    heap = [(vals[si, sj], si, sj)]
    while heap:
        b, i, j = heapq.heappop(heap)
        if done[i, j]:
            continue
        done[i, j] = True
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if di == 0 and dj == 0:
                    continue
                ii, jj = i + di, j + dj
                if 0 <= ii < nx and 0 <= jj < ny and not done[ii, jj]:
                    cand = max(b, vals[ii, jj])
                    if cand < best[ii, jj]:
                        best[ii, jj] = cand
                        heapq.heappush(heap, (cand, ii, jj))
    return best


def minimax_height(grid, x, z):
    """H(x, z): bottleneck height between the snapped nodes."""
    sweep = bottleneck_sweep(grid, grid.snap(z))
    ix = grid.snap(x)
    return float(sweep[ix] if grid.dim == 1 else sweep[ix[0], ix[1]])


def maximal_height(potential, schedule=None, r=1.0, t=None, h=1e-3, box=None,
                   margin=1.0, check_refinement=False):
    """m(t) = sup_x [H_t(x, z0) - V_t(x)] with z0 the argmin node of V_t.

    ``schedule=None`` (or ``t=None``) evaluates the unconfined landscape
    m(inf).  With ``check_refinement`` the value is recomputed at h/2 and a
    RuntimeWarning is raised into the report when it moves by > 1%.
    """
    a = math.inf
    if schedule is not None and t is not None:
        _, a = schedule.annealing_coefficients(float(t), r)
        a = float(a)
    grid = build_grid(potential, a, h, box, margin)
    vals = grid.values - grid.values.min()
    grid_n = GridGraph(grid.xs, grid.ys, vals, grid.h)
    if grid.dim == 1:
        z0 = int(np.argmin(vals))
    else:
        z0 = tuple(np.unravel_index(int(np.argmin(vals)), vals.shape))
    sweep = bottleneck_sweep(grid_n, z0)
    m = float(np.max(sweep - vals))
    if check_refinement:
        m2 = maximal_height(potential, schedule, r, t, h / 2, box, margin, False)
        if abs(m2 - m) > 0.01 * max(abs(m), 1e-12):
            import warnings
            warnings.warn(f"maximal_height not grid-converged: {m} vs {m2} at h/2",
                          RuntimeWarning)
    return m


@dataclass
class LandscapeReport:
    t_grid: np.ndarray
    m_values: np.ndarray
    a_values: np.ndarray
    m_infinity: float
    bound_constant: float         # fitted C with |m(t) - m(inf)| <= C / a(t)
    pair_heights: dict            # (i, j) -> H(m_i, m_j) on the unconfined grid


def landscape_report(potential, schedule, r, t_grid, h=2e-3, margin=1.0):
    """m(t) along a time grid, its limit, the fitted C/a(t) constant, and
    the pairwise barrier heights between minima."""
    t_grid = np.asarray(t_grid, dtype=float)
    m_inf = maximal_height(potential, None, r, None, h, margin=margin)
    ms, avs = [], []
    for t in t_grid:
        _, a = schedule.annealing_coefficients(float(t), r)
        ms.append(maximal_height(potential, schedule, r, float(t), h, margin=margin))
        avs.append(float(a))
    ms = np.array(ms)
    avs = np.array(avs)
    c_fit = float(np.max(np.abs(ms - m_inf) * avs))
    grid = build_grid(potential, math.inf, h, margin=margin)
    mins = [p for p in potential.critical_points() if p.kind == "local_min"]
    pair = {}
    for i, pi_ in enumerate(mins):
        sweep = bottleneck_sweep(grid, grid.snap(pi_.location))
        for j, pj in enumerate(mins):
            if j <= i:
                continue
            ix = grid.snap(pj.location)
            pair[(i, j)] = float(sweep[ix] if grid.dim == 1 else sweep[ix[0], ix[1]])
    return LandscapeReport(t_grid, ms, avs, m_inf, c_fit, pair)


def _spectrum_box(potential, eps2):
    """Symmetric box where the stationary density has dropped by e^{-90}:
    wide enough that truncation cannot move the low eigenvalues, narrow
    enough that neighboring density ratios stay representable."""
    cps = [p for p in potential.critical_points() if p.kind != "unresolved"]
    vmin = min(p.value for p in cps)
    r = max(potential.support_radius,
            max(float(np.max(np.abs(p.location))) for p in cps)) + 0.25
    target = vmin + 45.0 * eps2
    while float(potential.value(r)) < target and r < 1e4:
        r *= 1.25
    return (-r, r)


def generator_spectrum_1d(potential, eps2, a=math.inf, h=None, box=None):
    """Two smallest eigenvalues of the negated discretized generator.

    Reversible tridiagonal discretization with off-diagonal rates
    (eps^2/2h^2) sqrt(pi_j/pi_i); the similarity-symmetrized matrix has
    constant off-diagonal eps^2/2h^2 and is solved by LAPACK Sturm-sequence
    bisection.  pi ratios are formed from value differences only, so tiny
    absolute densities do not underflow; an unresolvable step (|dV|/eps^2 >
    700) raises a resolution error.
    """
    if potential.dim != 1:
        raise ValueError("generator spectrum implemented for dim 1")
    if eps2 <= 0:
        raise ValueError("eps2 must be > 0")
    eps = math.sqrt(eps2)
    if h is None:
        h = eps / 10.0
    if h >= eps / 5.0:
        raise ValueError("grid must resolve the temperature: h < eps/5")
    if box is None:
        box = _spectrum_box(potential, eps2)
    lo, hi = box
    n = int(round((hi - lo) / h)) + 1
    if n > MAX_NODES:
        raise ValueError("spectrum grid too large")
    xs = lo + np.arange(n) * h
    vt = potential.value(xs)
    if not math.isinf(a):
        vt = vt + xs * xs / a
    dv = np.diff(vt)
    if np.any(np.abs(dv) / eps2 > 700.0):
        raise RuntimeError("generator discretization unresolved: "
                           "|dV|/eps^2 overflow, refine h or raise eps")
    coef = eps2 / (2.0 * h * h)
    up = np.exp(-dv / eps2)          # rate i -> i+1 weight sqrt(pi_{i+1}/pi_i)
    down = np.exp(dv / eps2)         # rate i+1 -> i
    diag = np.zeros(n)
    diag[:-1] += coef * up
    diag[1:] += coef * down
    off = -coef * np.ones(n - 1)
    lam = eigvalsh_tridiagonal(diag, off, select="i", select_range=(0, 1),
                               lapack_driver="stebz", tol=1e-12)
    lam1, lam2 = float(lam[0]), float(lam[1])
    if abs(lam1) > 1e-8 * max(lam2, 1e-300):
        raise RuntimeError(f"constant eigenvector lost: lam1={lam1}, lam2={lam2}")
    return lam1, lam2
