"""Potential catalog: nonnegative C^2 energy landscapes V = W + chi.

Each entry carries exact polynomial derivatives, a declared convex/compact
decomposition (W strictly convex, chi compactly supported) and the constants
that the annealing thresholds need: the convexity constant c of W and
osc(chi) = sup chi - inf chi.

For the two-well entries the decomposition is built by prescribing W'' as a
ramped profile: W'' equals a small constant c0 in the middle, rises to V''
through a cubic smoothstep ramp, and equals V'' outside a compact window.
The ramp start points are solved (exactly, via polynomial antiderivatives)
so that W matches V in value and slope at both window edges; chi = V - W is
then compactly supported by construction.  The window edges sit past the
outermost minima, which is necessary: no convex W can agree with V inside
the wells, and this choice keeps osc(chi) close to its theoretical minimum
(the barrier height).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq, minimize_scalar

from ._piecewise import PiecewisePoly, horner

__all__ = [
    "Potential",
    "CriticalPoint",
    "HypothesisReport",
    "make_potential",
    "catalog_ids",
    "eval_all",
    "find_critical_points",
    "osc_chi",
    "check_hypotheses",
    "DRIFT_POLY1D",
    "DRIFT_RADIAL2D",
]

DRIFT_POLY1D = 0
DRIFT_RADIAL2D = 1

NEWTON_TOL = 1e-10
MERGE_RADIUS = 1e-6
GLOBAL_MIN_VALUE_TOL = 1e-9
CLASSIFY_EIG_TOL = 1e-8

# ramp construction constants
RAMP_C0 = 0.05        # floor of W'' inside the window
RAMP_RADIUS = 1.1     # half width of the decomposition window


@dataclass
class CriticalPoint:
    location: np.ndarray
    value: float
    kind: str                 # local_min | local_max | saddle | degenerate | unresolved
    hess_det: float
    hess_min_eig: float
    is_global_min: bool = False


@dataclass
class HypothesisReport:
    growth_a: float
    growth_b: float
    laplacian_slack_min: float      # min over samples of a + b V - Delta V
    growth_ratio_min_outer: float   # min of |grad V|^2 / V on the outermost annulus
    w_hessian_min_eig: float
    violations: list


class Potential:
    """Catalog potential with exact derivatives and a W + chi decomposition.

    Immutable after construction; every method is pure, so instances are
    safe to share across workers.
    """

    def __init__(self, catalog_id, dim, params, *, v_poly=None, w_poly=None,
                 radial=False, c, support_radius, growth_ab, search_box,
                 spawn_margin=None):
        self.catalog_id = catalog_id
        self.dim = dim
        self.params = tuple(params)
        self.c = float(c)
        self.support_radius = float(support_radius)
        self.growth_a, self.growth_b = growth_ab
        self.search_box = search_box
        self._radial = radial
        self._v = v_poly
        self._vp = v_poly.derivative()
        self._vpp = self._vp.derivative()
        self._w = w_poly
        self._wp = w_poly.derivative()
        self._wpp = self._wp.derivative()
        self._critical_points = None
        self.grad_chi_lipschitz = self._estimate_chi_pp_sup()

    # -- evaluation ---------------------------------------------------------

    def value(self, x):
        if self.dim == 1:
            return self._v(x)
        s = self._radius2(x)
        return self._v(np.sqrt(s))

    def grad(self, x):
        if self.dim == 1:
            return self._vp(x)
        x = np.asarray(x, dtype=float)
        r = np.sqrt(self._radius2(x))
        return self._radial_slope(self._vp, r)[..., None] * x

    def hess(self, x):
        if self.dim == 1:
            return self._vpp(x)
        return self._radial_hess(x, self._vp, self._vpp)

    def w_value(self, x):
        if self.dim == 1:
            return self._w(x)
        return self._w(np.sqrt(self._radius2(x)))

    def w_hess(self, x):
        if self.dim == 1:
            return self._wpp(x)
        return self._radial_hess(x, self._wp, self._wpp)

    def chi_value(self, x):
        return self.value(x) - self.w_value(x)

    def chi_second(self, r):
        """chi'' along the 1D/radial profile coordinate (Lipschitz metadata)."""
        return self._vpp(r) - self._wpp(r)

    def _radius2(self, x):
        x = np.asarray(x, dtype=float)
        return np.sum(x * x, axis=-1)

    @staticmethod
    def _radial_slope(fp, r):
        """f'(r)/r, finite at r=0 for even profiles (f'(0) = 0)."""
        r = np.asarray(r, dtype=float)
        safe = np.where(r > 1e-12, r, 1.0)
        out = fp(safe) / safe
        if np.any(r <= 1e-12):
            # limit f'(r)/r -> f''(0)
            fpp0 = fp.derivative()(0.0)
            out = np.where(r > 1e-12, out, fpp0)
        return out

    def _radial_hess(self, x, fp, fpp):
        x = np.asarray(x, dtype=float)
        r = np.sqrt(self._radius2(x))
        slope = self._radial_slope(fp, r)
        curv = fpp(r)
        eye = np.eye(self.dim)
        rr = np.where(r > 1e-12, r, 1.0)
        u = x / rr[..., None]
        outer = u[..., :, None] * u[..., None, :]
        h = slope[..., None, None] * eye + (curv - slope)[..., None, None] * outer
        if np.any(r <= 1e-12):
            h = np.where((r <= 1e-12)[..., None, None], fpp(0.0) * eye, h)
        return h

    # -- kernel interface ---------------------------------------------------

    def drift_spec(self):
        """(kind, breakpoints, padded ascending coefficients) of grad V.

        For dim 2 the coefficients are of p(s) with grad V = p(|x|^2) x.
        """
        if self.dim == 1:
            breaks, coeffs = self._vp.padded_coeffs()
            return DRIFT_POLY1D, breaks, coeffs
        if self.catalog_id == "mexican_2d":
            # V = (s-1)^2, grad V = 4(s-1) x
            return DRIFT_RADIAL2D, np.empty(0), np.array([[-4.0, 4.0]])
        if self.catalog_id == "quadratic":
            return DRIFT_RADIAL2D, np.empty(0), np.array([[1.0]])
        raise NotImplementedError(self.catalog_id)

    # -- derived data -------------------------------------------------------

    def critical_points(self):
        if self._critical_points is None:
            self._critical_points = find_critical_points(self)
        return self._critical_points

    def global_minima(self):
        return [p for p in self.critical_points() if p.is_global_min]

    def min_value(self):
        pts = [p for p in self.critical_points() if p.kind == "local_min"]
        return min(p.value for p in pts)

    def _estimate_chi_pp_sup(self):
        # radial second-derivative sup: Lipschitz estimate for grad chi
        if self.support_radius == 0.0:
            return 0.0
        r = np.linspace(-self.support_radius, self.support_radius, 20001)
        return float(np.max(np.abs(self._vpp(r) - self._wpp(r))))

    def __repr__(self):
        return f"Potential({self.catalog_id}{self.params}, dim={self.dim})"


# -- decomposition construction ---------------------------------------------

def _smoothstep_poly(a, b, descending=False):
    """Cubic smoothstep in x mapping [a, b] -> [0, 1] (or 1 -> 0)."""
    t = npoly.Polynomial([-a / (b - a), 1.0 / (b - a)])
    s = 3 * t**2 - 2 * t**3
    return (1 - s) if descending else s


def _ramp_profile(vpp, c0, left, x1l, x1r, right):
    """W'' profile: V'' outside [left, right], c0 on [x1l, x1r], smoothstep
    ramps between; returned as a PiecewisePoly split at V'''s own breaks."""
    knots = sorted({left, x1l, x1r, right} | {b for b in vpp.breaks if left < b < right})
    segs = []
    breaks = []
    # leading segment: V'' below `left`
    def vpp_coeffs_at(x):
        i = int(np.searchsorted(vpp.breaks, x, side="right"))
        return npoly.Polynomial(vpp.coeffs[i])

    all_breaks = [*knots]
    pieces = []
    for lo, hi in zip([None, *all_breaks], [*all_breaks, None]):
        mid = (lo + hi) / 2 if (lo is not None and hi is not None) else (
            (all_breaks[0] - 1.0) if lo is None else (all_breaks[-1] + 1.0))
        vseg = vpp_coeffs_at(mid)
        if mid <= left or mid >= right:
            p = vseg
        elif x1l <= mid <= x1r:
            p = npoly.Polynomial([c0])
        elif mid < x1l:
            s = _smoothstep_poly(left, x1l, descending=True)
            p = c0 + (vseg - c0) * s
        else:
            s = _smoothstep_poly(x1r, right)
            p = c0 + (vseg - c0) * s
        pieces.append(p.coef)
    return PiecewisePoly(np.array(all_breaks), pieces)


def _build_ramp_decomposition(v_poly, left, right, c0=RAMP_C0):
    """Solve ramp start points so W matches V (value and slope) at both
    window edges, then integrate W'' twice.  Exact in polynomial arithmetic;
    root finds are on smooth monotone scalar functions."""
    vp = v_poly.derivative()
    vpp = vp.derivative()
    target_slope = vp(right) - vp(left)
    target_value = v_poly(right) - v_poly(left)

    def slope_int(x1l, x1r):
        rho = _ramp_profile(vpp, c0, left, x1l, x1r, right)
        wp = rho.antiderivative(left, vp(left))
        return wp

    def f_slope(x1l, x1r):
        return slope_int(x1l, x1r)(right) - vp(right)

    lo_r = 1e-6
    def solve_x1r(x1l):
        return brentq(lambda b: f_slope(x1l, b), x1l + lo_r, right - lo_r, xtol=1e-13)

    def f_value(x1l):
        x1r = solve_x1r(x1l)
        wp = slope_int(x1l, x1r)
        w = wp.antiderivative(left, v_poly(left))
        return w(right) - v_poly(right), x1r

    # bracket x1l: scan from near `left` inward until f_value changes sign
    xs = np.linspace(left + 5e-3, (left + right) / 2, 41)
    vals = []
    for a in xs:
        try:
            vals.append((a, f_value(a)[0]))
        except ValueError:
            continue
    bracket = None
    for (a1, v1), (a2, v2) in zip(vals[:-1], vals[1:]):
        if v1 == 0.0 or v1 * v2 < 0:
            bracket = (a1, a2)
            break
    if bracket is None:
        raise ValueError("convex decomposition ramp solve failed: no bracket")
    x1l = brentq(lambda a: f_value(a)[0], *bracket, xtol=1e-13)
    x1r = solve_x1r(x1l)
    rho = _ramp_profile(vpp, c0, left, x1l, x1r, right)
    wp = rho.antiderivative(left, vp(left))
    w = wp.antiderivative(left, v_poly(left))
    w = _snap_outside(w, v_poly, left, right)

    # the realized convexity constant: min of W'' over the window
    grid = np.linspace(left, right, 40001)
    c_real = float(np.min(rho(grid)))
    return w, rho, c_real


def _snap_outside(w, v, left, right):
    """Replace W's segments outside [left, right] by V's own coefficient
    arrays, so chi = V - W evaluates to exactly 0.0 there.  The construction
    already matches to ~1e-12; this removes the roundoff residue."""
    def v_coeffs_at(x):
        i = int(np.searchsorted(v.breaks, x, side="right"))
        return v.coeffs[i]

    coeffs = []
    for i, c in enumerate(w.coeffs):
        lo = w.breaks[i - 1] if i > 0 else -np.inf
        hi = w.breaks[i] if i < w.breaks.size else np.inf
        if hi <= left or lo >= right:
            probe = lo + 1.0 if hi == np.inf else (hi - 1.0 if lo == -np.inf else 0.5 * (lo + hi))
            vc = v_coeffs_at(probe)
            width = max(c.size, vc.size)
            pad = np.zeros(width)
            pad[: vc.size] = vc
            old = np.zeros(width)
            old[: c.size] = c
            if np.max(np.abs(pad - old)) > 1e-7:
                raise AssertionError("decomposition does not match V outside the window")
            coeffs.append(vc.copy())
        else:
            coeffs.append(c)
    return PiecewisePoly(w.breaks, coeffs)


# -- catalog ----------------------------------------------------------------

def _quintic_hermite(x0, jet0, x1, jet1):
    """Quintic matching (value, slope, curvature) at both ends, ascending
    coefficients in plain x."""
    a = np.zeros((6, 6))
    b = np.zeros(6)
    for row, (x, jet) in enumerate(((x0, jet0), (x1, jet1))):
        pows = np.array([x**k for k in range(6)])
        a[3 * row, :] = pows
        a[3 * row + 1, 1:] = [k * x**(k - 1) for k in range(1, 6)]
        a[3 * row + 2, 2:] = [k * (k - 1) * x**(k - 2) for k in range(2, 6)]
        b[3 * row:3 * row + 3] = jet
    return np.linalg.solve(a, b)


def _make_quadratic(dim=1):
    v = PiecewisePoly([], [[0.0, 0.0, 0.5]])
    return Potential("quadratic", dim, (dim,), v_poly=v, w_poly=v, radial=dim == 2,
                     c=1.0, support_radius=0.0, growth_ab=(float(dim), 0.0),
                     search_box=(-3.0, 3.0))


def _make_tilted_well(v_shift):
    # (x - v)^2 / 2
    coeffs = [0.5 * v_shift**2, -v_shift, 0.5]
    v = PiecewisePoly([], [coeffs])
    return Potential("tilted_well", 1, (v_shift,), v_poly=v, w_poly=v,
                     c=1.0, support_radius=0.0, growth_ab=(1.0, 0.0),
                     search_box=(v_shift - 3.0, v_shift + 3.0))


def _double_well_polys():
    v = PiecewisePoly([], [[1.0, 0.0, -2.0, 0.0, 1.0]])  # (x^2-1)^2
    w, _rho, c_real = _build_ramp_decomposition(v, -RAMP_RADIUS, RAMP_RADIUS)
    return v, w, c_real


def _make_double_well():
    v, w, c_real = _double_well_polys()
    return Potential("double_well", 1, (), v_poly=v, w_poly=w,
                     c=c_real, support_radius=RAMP_RADIUS,
                     growth_ab=(16.0, 12.0), search_box=(-2.5, 2.5))


def _make_mexican_2d():
    v, w, c_real = _double_well_polys()
    return Potential("mexican_2d", 2, (), v_poly=v, w_poly=w, radial=True,
                     c=c_real, support_radius=RAMP_RADIUS,
                     growth_ab=(24.0, 16.0), search_box=(-2.5, 2.5))


def _make_spline_twowell(h_minus, h_plus, barrier):
    if min(h_minus, h_plus, barrier) <= 0:
        raise ValueError("spline_twowell parameters must be positive")
    kappa = 4.0 * barrier
    left_quad = [h_minus / 2 * 1.0, h_minus, h_minus / 2]        # (h-/2)(x+1)^2
    right_quad = [h_plus / 2 * 1.0, -h_plus, h_plus / 2]         # (h+/2)(x-1)^2
    mid_left = _quintic_hermite(-1.0, (0.0, 0.0, h_minus), 0.0, (barrier, 0.0, -kappa))
    mid_right = _quintic_hermite(0.0, (barrier, 0.0, -kappa), 1.0, (0.0, 0.0, h_plus))
    v = PiecewisePoly([-1.0, 0.0, 1.0], [left_quad, mid_left, mid_right, right_quad])
    # reject shapes with spurious interior critical points or negative dips
    grid = np.linspace(-1.0, 1.0, 20001)
    if np.min(v(grid)) < -1e-12:
        raise ValueError("spline_twowell dips below zero for these parameters")
    w, rho, c_real = _build_ramp_decomposition(v, -RAMP_RADIUS, RAMP_RADIUS)
    grid2 = np.linspace(-RAMP_RADIUS, RAMP_RADIUS, 40001)
    a_growth = max(float(np.max(v.derivative().derivative()(grid2))), h_minus, h_plus)
    return Potential("spline_twowell", 1, (h_minus, h_plus, barrier),
                     v_poly=v, w_poly=w, c=c_real, support_radius=RAMP_RADIUS,
                     growth_ab=(a_growth, 0.0), search_box=(-2.5, 2.5))


_CATALOG = {
    "quadratic": _make_quadratic,
    "double_well": _make_double_well,
    "spline_twowell": _make_spline_twowell,
    "tilted_well": _make_tilted_well,
    "mexican_2d": _make_mexican_2d,
}

_cache = {}


def catalog_ids():
    return sorted(_CATALOG)


def make_potential(catalog_id, *params):
    """Catalog factory; instances are cached by (id, params)."""
    if catalog_id not in _CATALOG:
        raise KeyError(f"unknown potential {catalog_id!r}; have {catalog_ids()}")
    key = (catalog_id, tuple(float(p) for p in params))
    if key not in _cache:
        _cache[key] = _CATALOG[catalog_id](*params)
    return _cache[key]


# -- operations -------------------------------------------------------------

def eval_all(potential, x):
    """(V, grad V, hess V) at x; rejects non-finite input."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("eval_all: non-finite input point")
    return potential.value(x), potential.grad(x), potential.hess(x)


def _newton_refine(potential, x0, max_iter=100):
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    d = potential.dim
    for _ in range(max_iter):
        g = np.atleast_1d(potential.grad(x if d > 1 else x[0]))
        gn = float(np.linalg.norm(g))
        if gn < NEWTON_TOL:
            return x, True
        h = potential.hess(x if d > 1 else x[0])
        h = np.atleast_2d(h)
        try:
            step = np.linalg.solve(h, -g)
        except np.linalg.LinAlgError:
            step = -g
        # damped: halve until the gradient norm decreases
        lam = 1.0
        for _ in range(60):
            xn = x + lam * step
            gnew = np.atleast_1d(potential.grad(xn if d > 1 else xn[0]))
            if np.linalg.norm(gnew) < gn:
                break
            lam *= 0.5
        else:
            return x, False
        x = x + lam * step
    g = np.atleast_1d(potential.grad(x if d > 1 else x[0]))
    return x, bool(np.linalg.norm(g) < NEWTON_TOL)


def _classify(potential, x):
    h = np.atleast_2d(potential.hess(x if potential.dim > 1 else float(x[0])))
    eigs = np.linalg.eigvalsh(h)
    mn, mx = float(eigs[0]), float(eigs[-1])
    det = float(np.linalg.det(h))
    if mn > CLASSIFY_EIG_TOL:
        kind = "local_min"
    elif mx < -CLASSIFY_EIG_TOL:
        kind = "local_max"
    elif mn < -CLASSIFY_EIG_TOL < CLASSIFY_EIG_TOL < mx:
        kind = "saddle"
    else:
        kind = "degenerate"
    return kind, det, mn


def find_critical_points(potential, box=None, grid_step=None):
    """Locate and classify all critical points inside the search box.

    Coarse grid candidates (local minima of |grad V|) are refined by damped
    Newton on grad V = 0 to 1e-10 and merged within 1e-6.  Non-converged
    candidates are returned with kind='unresolved'.
    """
    lo, hi = box if box is not None else potential.search_box
    d = potential.dim
    if grid_step is None:
        grid_step = (hi - lo) / 400 if d == 1 else (hi - lo) / 120

    candidates = []
    if d == 1:
        xs = np.arange(lo, hi + grid_step / 2, grid_step)
        g = potential.grad(xs)
        ga = np.abs(g)
        interior = np.arange(1, len(xs) - 1)
        dips = interior[(ga[interior] <= ga[interior - 1]) & (ga[interior] <= ga[interior + 1])]
        candidates = [np.array([xs[i]]) for i in dips]
        # also seed from sign changes to be safe on coarse grids
        sign_flip = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)[0]
        candidates += [np.array([0.5 * (xs[i] + xs[i + 1])]) for i in sign_flip]
    else:
        xs = np.arange(lo, hi + grid_step / 2, grid_step)
        gx, gy = np.meshgrid(xs, xs, indexing="ij")
        pts = np.stack([gx, gy], axis=-1)
        g = potential.grad(pts)
        gn = np.sqrt(np.sum(g * g, axis=-1))
        for i in range(1, len(xs) - 1):
            for j in range(1, len(xs) - 1):
                window = gn[i - 1:i + 2, j - 1:j + 2]
                if gn[i, j] <= window.min():
                    candidates.append(pts[i, j].copy())

    refined, unresolved = [], []
    for x0 in candidates:
        x, ok = _newton_refine(potential, x0)
        (refined if ok else unresolved).append(x)

    merged = []
    for x in refined:
        if not any(np.linalg.norm(x - y) < MERGE_RADIUS for y in merged):
            merged.append(x)

    out = []
    for x in merged:
        if np.any(x < lo - grid_step) or np.any(x > hi + grid_step):
            continue
        kind, det, mn = _classify(potential, x)
        val = float(potential.value(x if d > 1 else float(x[0])))
        out.append(CriticalPoint(x.copy(), val, kind, det, mn))
    for x in unresolved:
        val = float(potential.value(x if d > 1 else float(x[0])))
        out.append(CriticalPoint(x.copy(), val, "unresolved", np.nan, np.nan))

    mins = [p for p in out if p.kind == "local_min"]
    if mins:
        vmin = min(p.value for p in mins)
        for p in mins:
            p.is_global_min = p.value <= vmin + GLOBAL_MIN_VALUE_TOL
    out.sort(key=lambda p: tuple(p.location))
    return out


def osc_chi(potential):
    """sup chi - inf chi over the compact support (fine grid + refinement)."""
    r = potential.support_radius
    if r == 0.0:
        return 0.0
    if potential.dim == 1:
        xs = np.linspace(-r, r, 4001)
    else:
        xs = np.linspace(0.0, r, 4001)  # catalog chi is radial in dim 2
    vals = potential.chi_value(xs if potential.dim == 1 else
                               np.stack([xs, np.zeros_like(xs)], axis=-1))
    lo_grid = xs[np.argmin(vals)]
    hi_grid = xs[np.argmax(vals)]
    h = xs[1] - xs[0]

    def chi1(t):
        return potential.chi_value(t) if potential.dim == 1 else \
            potential.chi_value(np.array([abs(t), 0.0]))

    lo = minimize_scalar(chi1, bounds=(lo_grid - 2 * h, lo_grid + 2 * h), method="bounded").fun
    hi = -minimize_scalar(lambda t: -chi1(t), bounds=(hi_grid - 2 * h, hi_grid + 2 * h),
                          method="bounded").fun
    lo = min(lo, float(np.min(vals)), 0.0)   # chi vanishes at the support edge
    hi = max(hi, float(np.max(vals)), 0.0)
    return float(hi - lo)


def check_hypotheses(potential, n_samples=2000, seed=0):
    """Sample nested annuli and report the growth/convexity hypotheses.

    This reports rather than asserts: a constant ratio |grad V|^2/V (as for
    the quadratic well) is flagged, not raised.
    """
    rng = np.random.default_rng(seed)
    scale = max(potential.support_radius, 1.0)
    radii = scale * np.array([0.5, 1.0, 2.0, 4.0, 8.0])
    a, b = potential.growth_a, potential.growth_b
    slack_min = np.inf
    w_min_eig = np.inf
    ratio_min_outer = np.inf
    per_annulus = n_samples // len(radii) + 1
    for band, (r0, r1) in enumerate(zip(np.r_[0.0, radii[:-1]], radii)):
        u = rng.uniform(r0, r1, per_annulus)
        if potential.dim == 1:
            pts = u * rng.choice([-1.0, 1.0], per_annulus)
        else:
            th = rng.uniform(0, 2 * np.pi, per_annulus)
            pts = np.stack([u * np.cos(th), u * np.sin(th)], axis=-1)
        v = np.asarray(potential.value(pts), dtype=float)
        g = potential.grad(pts)
        h = potential.hess(pts)
        if potential.dim == 1:
            lap = np.asarray(h, dtype=float)
            g2 = np.asarray(g, dtype=float) ** 2
            wh = np.asarray(potential.w_hess(pts), dtype=float)
            w_min_eig = min(w_min_eig, float(np.min(wh)))
        else:
            lap = np.trace(h, axis1=-2, axis2=-1)
            g2 = np.sum(g * g, axis=-1)
            wh = potential.w_hess(pts)
            w_min_eig = min(w_min_eig, float(np.min(np.linalg.eigvalsh(wh))))
        slack_min = min(slack_min, float(np.min(a + b * v - lap)))
        if band == len(radii) - 1:
            ratio_min_outer = float(np.min(g2 / np.maximum(v, 1e-300)))
    violations = []
    if slack_min < -1e-9:
        violations.append("laplacian growth bound violated")
    if w_min_eig <= 0:
        violations.append("W is not strictly convex on samples")
    if ratio_min_outer < 10.0:
        violations.append("growth ratio |grad V|^2/V borderline (not diverging)")
    return HypothesisReport(a, b, slack_min, ratio_min_outer, w_min_eig, violations)
