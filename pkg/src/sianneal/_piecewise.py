"""Piecewise polynomials in the plain power basis.

The potential catalog is built from polynomial segments (quadratic tails,
quintic Hermite bridges, smoothstep ramps), so exact derivatives and exact
antiderivatives are available through coefficient algebra.  Segments are
stored with ascending coefficients; evaluation uses Horner's rule so the
compiled and pure-python SDE kernels reproduce the same floating-point
values.
"""

from __future__ import annotations

import numpy as np

__all__ = ["PiecewisePoly", "horner"]


def horner(coeffs, x):
    """Evaluate an ascending-coefficient polynomial by Horner's rule."""
    r = np.full_like(np.asarray(x, dtype=float), coeffs[-1], dtype=float)
    for c in coeffs[-2::-1]:
        r = r * x + c
    return r


class PiecewisePoly:
    """Polynomial segments on intervals split by interior breakpoints.

    ``breaks`` has length ``nseg - 1``; segment ``i`` covers
    ``(breaks[i-1], breaks[i]]`` with the outer segments extending to
    +-infinity.  Continuity is the caller's responsibility (the catalog
    constructions are C^2 by design and tests verify it).
    """

    def __init__(self, breaks, coeffs):
        self.breaks = np.asarray(breaks, dtype=float)
        if self.breaks.size and np.any(np.diff(self.breaks) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        self.coeffs = [np.asarray(c, dtype=float) for c in coeffs]
        if len(self.coeffs) != self.breaks.size + 1:
            raise ValueError("need exactly one segment more than breakpoints")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        shape = x.shape
        xf = x.ravel()
        out = np.empty_like(xf)
        idx = np.searchsorted(self.breaks, xf, side="right")
        for i, c in enumerate(self.coeffs):
            m = idx == i
            if np.any(m):
                out[m] = horner(c, xf[m])
        return float(out[0]) if shape == () else out.reshape(shape)

    def derivative(self):
        return PiecewisePoly(self.breaks, [np.polynomial.polynomial.polyder(c) for c in self.coeffs])

    def antiderivative(self, x0, y0):
        """Antiderivative equal to ``y0`` at ``x0``, continuous across breaks."""
        raw = [np.polynomial.polynomial.polyint(c) for c in self.coeffs]
        pieces = [np.concatenate([[0.0], c]) if c.size == 1 else c for c in raw]
        # fix constants left to right so the result is continuous
        consts = np.zeros(len(pieces))
        for i, b in enumerate(self.breaks):
            left = horner(pieces[i], b) + consts[i]
            consts[i + 1] = left - horner(pieces[i + 1], b)
        j = int(np.searchsorted(self.breaks, x0, side="right"))
        shift = y0 - (horner(pieces[j], x0) + consts[j])
        out = []
        for c, k in zip(pieces, consts):
            c = c.copy()
            c[0] += k + shift
            out.append(c)
        return PiecewisePoly(self.breaks, out)

    def split_at(self, points):
        """Insert extra breakpoints (duplicating segment polynomials)."""
        breaks = list(self.breaks)
        coeffs = list(self.coeffs)
        for p in sorted(points):
            if any(abs(p - b) < 1e-14 for b in breaks):
                continue
            i = int(np.searchsorted(breaks, p))
            breaks.insert(i, p)
            coeffs.insert(i, coeffs[i].copy())
        return PiecewisePoly(breaks, coeffs)

    def max_degree(self):
        return max(c.size for c in self.coeffs) - 1

    def padded_coeffs(self):
        """(breaks, coeff matrix) with rows zero-padded to a common width."""
        width = self.max_degree() + 1
        mat = np.zeros((len(self.coeffs), width))
        for i, c in enumerate(self.coeffs):
            mat[i, : c.size] = c
        return self.breaks.copy(), mat
