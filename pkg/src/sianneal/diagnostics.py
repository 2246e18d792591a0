"""Trajectory estimators: occupation measures with basin weights, Cesaro
averages, relative-entropy / total-variation distances against Gibbs
targets, decay-rate fits, and the constant-gain mean trackers.

Samples are recorded on uniform time grids, so time-weighted averages are
plain sample averages; all estimators are deterministic folds over the
arrays they receive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "OccupationSummary",
    "DivergenceEstimate",
    "MeanTracker",
    "occupation",
    "cesaro",
    "kl_to_gibbs",
    "decay_rate_fit",
    "mean_trackers",
    "tightness_report",
    "basin_intervals",
    "plateau_bump",
]

MIN_KL_SAMPLES = 1000


def _paths_matrix(states):
    """Normalize [n], [n,d], [P,n] or [P,n,d] (d=1) to a [P,n] matrix."""
    a = np.asarray(states, dtype=float)
    if a.ndim == 3:
        if a.shape[2] != 1:
            raise ValueError("scalar-state estimator got dim > 1 states")
        a = a[:, :, 0]
    elif a.ndim == 2 and a.shape[1] == 1:
        a = a[:, 0][None, :]
    elif a.ndim == 1:
        a = a[None, :]
    return a


def basin_intervals(potential):
    """1D basin of each local minimum: bounded by midpoints to the adjacent
    critical points (unbounded on the outside)."""
    cps = [p for p in potential.critical_points() if p.kind != "unresolved"]
    cps.sort(key=lambda p: float(p.location[0]))
    out = []
    for i, p in enumerate(cps):
        if p.kind != "local_min":
            continue
        x = float(p.location[0])
        lo = -math.inf if i == 0 else 0.5 * (x + float(cps[i - 1].location[0]))
        hi = math.inf if i == len(cps) - 1 else 0.5 * (x + float(cps[i + 1].location[0]))
        out.append((x, lo, hi))
    return out


def plateau_bump(center, r_in, r_out):
    """C^1 bump: 1 on [c-r_in, c+r_in], smoothstep to 0 at distance r_out."""
    def f(x):
        u = (np.abs(np.asarray(x, dtype=float) - center) - r_in) / (r_out - r_in)
        u = np.clip(u, 0.0, 1.0)
        return 1.0 - u * u * (3.0 - 2.0 * u)
    return f


@dataclass
class OccupationSummary:
    edges: np.ndarray
    masses: np.ndarray
    basin_minima: np.ndarray       # locations of the local minima
    basin_masses: np.ndarray       # occupation mass of each basin
    window: tuple
    n_samples: int
    cesaro_values: dict = field(default_factory=dict)


def occupation(times, states, window, bins, potential, test_functions=None):
    """Time-weighted occupation histogram over ``window`` plus per-minimum
    basin masses (1D midpoint basins)."""
    times = np.asarray(times, dtype=float)
    t0, t1 = window
    sel = (times >= t0) & (times <= t1)
    if not np.any(sel):
        raise ValueError("empty occupation window")
    mat = _paths_matrix(states)[:, sel]
    samples = mat.ravel()
    lo, hi = float(samples.min()), float(samples.max())
    if isinstance(bins, int):
        pad = 1e-9 * max(1.0, hi - lo)
        edges = np.linspace(lo - pad, hi + pad, bins + 1)
    else:
        edges = np.asarray(bins, dtype=float)
    counts, _ = np.histogram(samples, bins=edges)
    masses = counts / samples.size
    basins = basin_intervals(potential)
    bm = np.array([np.mean((samples >= blo) & (samples <= bhi)) for _, blo, bhi in basins])
    ces = {}
    if test_functions:
        for name, f in test_functions.items():
            ces[name] = float(np.mean(f(samples)))
    return OccupationSummary(edges, masses, np.array([b[0] for b in basins]), bm,
                             (t0, t1), samples.size, ces)


def cesaro(times, values, f=None, t=None):
    """(1/t) int_0^t f(Y_s) ds by the trapezoidal rule on the record grid."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.ndim > 1:
        values = values[:, 0]
    if f is not None:
        values = np.asarray(f(values), dtype=float)
    if t is None:
        t = times[-1]
    sel = times <= t
    ts, vs = times[sel], values[sel]
    if ts.size < 2 or ts[-1] <= 0:
        raise ValueError("cesaro needs a positive-length window")
    return float(np.trapezoid(vs, ts) / ts[-1])


@dataclass
class DivergenceEstimate:
    kl: float
    tv: float
    n_samples: int
    n_bins: int
    pinsker_slack: float    # 2 KL + slack - TV^2 >= 0 check margin used
    pinsker_ok: bool

    def __post_init__(self):
        pass


def kl_to_gibbs(samples, measure, bins=100, pinsker_slack=0.01):
    """Histogram relative entropy and total variation against the exact
    Gibbs bin masses (quadrature).  Samples outside the box are clipped into
    the edge bins, whose target mass absorbs the (analytically bounded)
    tail."""
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size < MIN_KL_SAMPLES:
        raise ValueError(f"kl_to_gibbs needs >= {MIN_KL_SAMPLES} samples")
    lo, hi = measure.box
    edges = np.linspace(lo, hi, bins + 1)
    clipped = np.clip(samples, lo + 1e-12 * (hi - lo), hi - 1e-12 * (hi - lo))
    counts, _ = np.histogram(clipped, bins=edges)
    p_hat = counts / counts.sum()
    pi = measure.bin_masses(edges)
    pi = pi / pi.sum()
    nz = p_hat > 0
    if np.any(pi[nz] < 1e-300):
        kl = math.inf
    else:
        kl = float(np.sum(p_hat[nz] * np.log(p_hat[nz] / pi[nz])))
    tv = 0.5 * float(np.sum(np.abs(p_hat - pi)))
    ok = tv * tv <= 2.0 * kl + pinsker_slack
    return DivergenceEstimate(kl, tv, samples.size, bins, pinsker_slack, bool(ok))


@dataclass
class DecayFit:
    slope: float
    intercept: float
    residual: float
    n_used: int


def decay_rate_fit(t_grid, h_values, divide_log_cube=False):
    """Least-squares slope of log H against log t (optionally after dividing
    out the (log t)^3 factor); nonpositive H values are excluded."""
    t = np.asarray(t_grid, dtype=float)
    h = np.asarray(h_values, dtype=float)
    keep = (h > 0) & (t > 1.0)
    if keep.sum() < 3:
        raise ValueError("decay_rate_fit: fewer than 3 usable points")
    t, h = t[keep], h[keep]
    y = np.log(h)
    if divide_log_cube:
        y = y - 3.0 * np.log(np.log(t))
    x = np.log(t)
    a = np.stack([x, np.ones_like(x)], axis=1)
    coef, res, _, _ = np.linalg.lstsq(a, y, rcond=None)
    resid = float(np.sqrt(res[0] / x.size)) if res.size else 0.0
    return DecayFit(float(coef[0]), float(coef[1]), resid, int(keep.sum()))


@dataclass
class MeanTracker:
    times: np.ndarray
    m_t: np.ndarray             # ensemble mean of (1/t) int_0^t Y ds
    mu_t: np.ndarray            # ensemble mean of mu_bar
    mu_over_logt: np.ndarray
    verdict: str
    gamma_bar: float
    details: dict


def mean_trackers(times, y_states, mu_states, gamma_bar, flat_tol=0.05,
                  ratio_tol=0.10):
    """Constant-gain verdicts from the (Y, mu) records.

    ``mean_converges``: the ensemble-mean empirical mean flattens (its
    oscillation over the last time decade is below ``flat_tol`` of its full
    range).  ``diverges_log``: mu_bar_T / log T lands within ``ratio_tol``
    (relative) of the invariant-measure mean.
    """
    times = np.asarray(times, dtype=float)
    y = _paths_matrix(y_states).mean(axis=0)
    mu = _paths_matrix(mu_states).mean(axis=0)
    # running Cesaro mean on the record grid
    dt_rec = np.diff(times)
    inc = 0.5 * (y[1:] + y[:-1]) * dt_rec
    integral = np.concatenate([[0.0], np.cumsum(inc)])
    with np.errstate(invalid="ignore", divide="ignore"):
        m_t = np.where(times > 0, integral / np.where(times > 0, times, 1.0), y[0])
        mu_logt = np.where(times > 1.0, mu / np.where(times > 1.0, np.log(times), 1.0), np.nan)

    t_final = times[-1]
    last = times >= t_final / 10.0
    osc = float(mu[last].max() - mu[last].min())
    rng = float(mu.max() - mu.min())
    ratio_final = float(mu_logt[-1]) if times[-1] > 1 else math.nan
    details = dict(oscillation_last_decade=osc, mu_range=rng,
                   mu_over_logt_final=ratio_final,
                   m_final=float(m_t[-1]))
    if gamma_bar == 0.0:
        verdict = "mean_converges" if (rng == 0 or osc <= flat_tol * rng) else "undecided"
    else:
        rel = abs(ratio_final - gamma_bar) / abs(gamma_bar)
        details["ratio_rel_err"] = rel
        verdict = "diverges_log" if rel <= ratio_tol else "undecided"
    return MeanTracker(times, m_t, mu, mu_logt, verdict, gamma_bar, details)


def tightness_report(times, states, potential, schedule, R, t_grid):
    """E[V(Z_t) 1{V >= R}] * g o G^{-1}(t) along a time grid (ensemble)."""
    times = np.asarray(times, dtype=float)
    mat = _paths_matrix(states)
    out = []
    for t in np.asarray(t_grid, dtype=float):
        i = int(np.argmin(np.abs(times - t)))
        v = potential.value(mat[:, i])
        ex = float(np.mean(np.where(v >= R, v, 0.0)))
        gval = float(schedule.g(schedule.g_inverse(float(times[i]))))
        out.append(ex * gval)
    return np.asarray(t_grid, dtype=float), np.array(out)
