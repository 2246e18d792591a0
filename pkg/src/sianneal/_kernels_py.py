"""Pure-numpy Euler-Maruyama step kernels (fallback backend).

These mirror the compiled kernels in ``_kernels.pyx`` operation for
operation: the same coefficient arrays, the same Horner drift evaluation and
the same update formulas, applied elementwise over the path axis.  Because
every path is an independent scalar recursion, the two backends produce
bit-identical trajectories; a test asserts this whenever the extension is
available.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

MODE_X = 0
MODE_Y = 1
DRIFT_POLY1D = 0
DRIFT_RADIAL2D = 1


def _drift_poly1d(breaks, coeffs, x):
    """grad V at x for a piecewise polynomial drift (ascending Horner)."""
    if breaks.size == 0:
        c = coeffs[0]
        r = np.full_like(x, c[-1])
        for j in range(c.shape[0] - 2, -1, -1):
            r = r * x + c[j]
        return r
    idx = np.searchsorted(breaks, x, side="right")
    r = np.empty_like(x)
    for i in range(coeffs.shape[0]):
        m = idx == i
        if np.any(m):
            c = coeffs[i]
            acc = np.full(m.sum(), c[-1])
            xm = x[m]
            for j in range(c.shape[0] - 2, -1, -1):
                acc = acc * xm + c[j]
            r[m] = acc
    return r


def _drift_radial2d(coeffs, x):
    """grad V = p(|x|^2) x for an ascending polynomial p."""
    s = x[:, 0] * x[:, 0] + x[:, 1] * x[:, 1]
    c = coeffs[0]
    p = np.full_like(s, c[-1])
    for j in range(c.shape[0] - 2, -1, -1):
        p = p * s + c[j]
    return p[:, None] * x


def _drift(dkind, breaks, coeffs, x):
    if dkind == DRIFT_POLY1D:
        return _drift_poly1d(breaks, coeffs, x[:, 0])[:, None]
    return _drift_radial2d(coeffs, x)


def _blow_mask(x, radius):
    return ~np.all(np.abs(x) <= radius, axis=1)


def xy_chunk(mode, dkind, dbreaks, dcoeffs, state, mu, noise, sqdt, dt,
             g_arr, a_half, b_half, step0, stride, blow_radius, blow_step,
             rec_state, rec_mu):
    """Advance the self-interacting process (X with its empirical mean, or
    the centered Y system) over one chunk of steps."""
    n_steps = noise.shape[1]
    for s in range(n_steps):
        alive = blow_step < 0
        gn = g_arr[s]
        ah = a_half[s]
        bh = b_half[s]
        if mode == MODE_X:
            f = _drift(dkind, dbreaks, dcoeffs, state - mu)
            x_new = state + sqdt * noise[:, s, :] - (dt * gn) * f
            inv = 1.0 / (1.0 + bh)
            mu_new = (mu * (1.0 - ah) + ah * state + bh * x_new) * inv
        else:
            f = _drift(dkind, dbreaks, dcoeffs, state)
            x_new = state + sqdt * noise[:, s, :] - (dt * gn) * f - (2.0 * ah) * state
            mu_new = mu + ah * state + bh * x_new
        bad = alive & _blow_mask(x_new, blow_radius)
        blow_step[bad] = step0 + s + 1
        upd = (blow_step < 0)[:, None]
        state[...] = np.where(upd, x_new, state)
        mu[...] = np.where(upd, mu_new, mu)
        n_global = step0 + s + 1
        if n_global % stride == 0:
            slot = n_global // stride
            rec_state[:, slot, :] = state
            rec_mu[:, slot, :] = mu


def z_chunk(dkind, dbreaks, dcoeffs, state, noise, eps_sqdt, conf, dt,
            step0, stride, blow_radius, blow_step, rec_state):
    """Advance dZ = eps(t) dB - (grad V(Z) + (2/a(t)) Z) dt over one chunk."""
    n_steps = noise.shape[1]
    for s in range(n_steps):
        alive = blow_step < 0
        f = _drift(dkind, dbreaks, dcoeffs, state)
        x_new = state + eps_sqdt[s] * noise[:, s, :] - dt * (f + conf[s] * state)
        bad = alive & _blow_mask(x_new, blow_radius)
        blow_step[bad] = step0 + s + 1
        state[...] = np.where((blow_step < 0)[:, None], x_new, state)
        n_global = step0 + s + 1
        if n_global % stride == 0:
            rec_state[:, n_global // stride, :] = state


def coupled_chunk(dkind, dbreaks, dcoeffs, y, z, noise, sqdt, dt, a2,
                  step0, stride, blow_radius, blow_step, rec_y, rec_z):
    """Advance the synchronously coupled pair (Y, Z) sharing one Brownian
    path: Y carries the extra -Y/(r+t) attraction, Z is autonomous."""
    n_steps = noise.shape[1]
    for s in range(n_steps):
        alive = blow_step < 0
        fy = _drift(dkind, dbreaks, dcoeffs, y)
        fz = _drift(dkind, dbreaks, dcoeffs, z)
        dw = sqdt * noise[:, s, :]
        y_new = y + dw - dt * fy - a2[s] * y
        z_new = z + dw - dt * fz
        bad = alive & (_blow_mask(y_new, blow_radius) | _blow_mask(z_new, blow_radius))
        blow_step[bad] = step0 + s + 1
        upd = (blow_step < 0)[:, None]
        y[...] = np.where(upd, y_new, y)
        z[...] = np.where(upd, z_new, z)
        n_global = step0 + s + 1
        if n_global % stride == 0:
            slot = n_global // stride
            rec_y[:, slot, :] = y
            rec_z[:, slot, :] = z
