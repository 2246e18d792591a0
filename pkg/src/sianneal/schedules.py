"""Annealing schedules g, their primitives G, generalized inverses, and the
derived temperature / confinement scales.

Two families are supported.  ``constant(g0)`` keeps the drift gain fixed
(the g = 1 regime of the constant-gain study).  ``logarithmic(k, shift)``
realizes g(t) = log(shift + t) / k, for which the effective annealing
coefficient

    k_eff = lim g(t)^{-1} log G(t) = k

equals the constructor parameter, so the time-changed temperature satisfies
eps^2(t) ~ k / log t and the convergence threshold reads
k > max{2 osc(chi), d/4}.  (The reciprocal convention, g = k log t, would
make the constructor k play the inverse role; the thresholds and freezing
experiments fix the convention used here.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Schedule",
    "AnnealingState",
    "constant_schedule",
    "logarithmic_schedule",
    "g_inverse",
    "annealing_state",
    "lsi_constant",
    "threshold_check",
    "ThresholdVerdict",
]

GINV_TOL = 1e-10
LSI_EXP_OVERFLOW = 700.0


@dataclass(frozen=True)
class Schedule:
    family: str            # "constant" | "logarithmic"
    g0: float = 1.0        # constant family gain
    k: float = 1.0         # logarithmic family annealing coefficient
    shift: float = math.e  # logarithmic family shift, >= e so g(0) > 0

    def __post_init__(self):
        if self.family not in ("constant", "logarithmic"):
            raise ValueError(f"unknown schedule family {self.family!r}")
        if self.family == "constant" and self.g0 <= 0:
            raise ValueError("constant schedule needs g0 > 0")
        if self.family == "logarithmic":
            if self.k <= 0:
                raise ValueError("logarithmic schedule needs k > 0")
            if self.shift < math.e:
                raise ValueError("logarithmic shift must be >= e so that g(0) > 0")

    # -- the pair (g, G) ----------------------------------------------------

    def g(self, t):
        t = np.asarray(t, dtype=float)
        if self.family == "constant":
            out = np.full_like(t, self.g0)
        else:
            out = np.log(self.shift + t) / self.k
        return float(out) if out.ndim == 0 else out

    def g_prime(self, t):
        t = np.asarray(t, dtype=float)
        if self.family == "constant":
            out = np.zeros_like(t)
        else:
            out = 1.0 / (self.k * (self.shift + t))
        return float(out) if out.ndim == 0 else out

    def G(self, t):
        t = np.asarray(t, dtype=float)
        if self.family == "constant":
            out = self.g0 * t
        else:
            s = self.shift
            out = ((s + t) * (np.log(s + t) - 1.0) - s * (math.log(s) - 1.0)) / self.k
        return float(out) if out.ndim == 0 else out

    def g_inverse(self, u):
        """Generalized inverse G^{-1}(u) = inf{t >= 0 : G(t) >= u}.

        Closed form for the constant family; bisection-guarded Newton on the
        closed-form G for the logarithmic one (G is smooth, increasing and
        convex, so Newton from an upper guess converges monotonically).
        """
        u = np.asarray(u, dtype=float)
        if np.any(u < 0):
            raise ValueError("g_inverse: argument must be >= 0")
        if self.family == "constant":
            out = u / self.g0
            return float(out) if out.ndim == 0 else out
        s, k = self.shift, self.k
        # initial guess: invert u ~ t log(s+t)/k roughly, then Newton
        t = np.maximum(u * k / np.log(s + u * k + 3.0), 0.0)
        t = np.maximum(t, u * k / np.log(s + 3.0))  # ensure G(t) >= u-ish
        for _ in range(60):
            resid = self.G(t) - u
            step = resid / self.g(np.maximum(t, 0.0))
            t = np.maximum(t - step, 0.0)
            if np.max(np.abs(resid)) < GINV_TOL:
                break
        # one extra polish iteration after the residual check
        t = np.maximum(t - (self.G(t) - u) / self.g(t), 0.0)
        return float(t) if t.ndim == 0 else t

    # -- derived annealing quantities ----------------------------------------

    def eps2(self, t):
        """Temperature squared of the time-changed process, 1/(g o G^{-1})."""
        return 1.0 / self.g(self.g_inverse(t))

    def annealing_coefficients(self, t, r):
        """(eps2(t), a(t)) with a(t) = (r + G^{-1}(t)) / eps2(t), vectorized."""
        ginv = self.g_inverse(t)
        gg = self.g(ginv)
        eps2 = 1.0 / gg
        a = (r + ginv) * gg
        return eps2, a

    def k_effective(self):
        """lim g(t)^{-1} log G(t); None when the limit is not finite."""
        if self.family == "logarithmic":
            return self.k
        return None

    def k_effective_at(self, t):
        """Finite-time probe of g(t)^{-1} log G(t)."""
        return float(np.log(self.G(t)) / self.g(t))


@dataclass(frozen=True)
class AnnealingState:
    t: float
    eps2: float
    a: float
    r: float


def constant_schedule(g0=1.0):
    return Schedule("constant", g0=float(g0))


def logarithmic_schedule(k, shift=math.e):
    return Schedule("logarithmic", k=float(k), shift=float(shift))


def g_inverse(schedule, u):
    return schedule.g_inverse(u)


def annealing_state(schedule, r, t):
    if r <= 0:
        raise ValueError("initial weight r must be > 0")
    if t < 0:
        raise ValueError("time must be >= 0")
    eps2, a = schedule.annealing_coefficients(float(t), float(r))
    return AnnealingState(t=float(t), eps2=float(eps2), a=float(a), r=float(r))


def lsi_constant(state, osc_chi, c):
    """Log-Sobolev constant 2 exp(2 osc(chi)/eps^2) / c.

    Returns +inf (saturation sentinel) when the exponent would overflow.
    """
    if c <= 0:
        raise ValueError("convexity constant c must be > 0")
    if osc_chi < 0:
        raise ValueError("osc(chi) must be >= 0")
    expo = 2.0 * osc_chi / state.eps2
    if expo > LSI_EXP_OVERFLOW:
        return math.inf
    return 2.0 * math.exp(expo) / c


@dataclass(frozen=True)
class ThresholdVerdict:
    verdict: str            # converges_to_global_minima | may_freeze | constant_g_regime
    k_effective: float | None
    two_osc_chi: float
    d_over_4: float


def threshold_check(schedule, potential):
    """Compare the schedule's effective annealing coefficient against the
    convergence threshold max{2 osc(chi), d/4}."""
    from .potentials import osc_chi as _osc

    two_osc = 2.0 * _osc(potential)
    d4 = potential.dim / 4.0
    if schedule.family == "constant":
        return ThresholdVerdict("constant_g_regime", None, two_osc, d4)
    k_eff = schedule.k_effective()
    verdict = "converges_to_global_minima" if k_eff > max(two_osc, d4) else "may_freeze"
    return ThresholdVerdict(verdict, k_eff, two_osc, d4)
