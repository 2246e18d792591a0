# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Euler-Maruyama step kernels (hot-loop backend).

Operation-for-operation twin of ``_kernels_py``: identical update formulas
and Horner drift evaluation, looped per path in C.  Compiled with
-ffp-contract=off so results are bit-identical with the numpy fallback.
"""

import numpy as np
cimport numpy as cnp

BACKEND_NAME = "compiled"

MODE_X = 0
MODE_Y = 1
DRIFT_POLY1D = 0
DRIFT_RADIAL2D = 1

cdef int _MODE_X = 0

cdef inline double _fabs(double x) nogil:
    return -x if x < 0.0 else x


cdef inline double _poly1d(const double[::1] breaks, const double[:, ::1] coeffs,
                           double x) nogil:
    cdef Py_ssize_t nb = breaks.shape[0]
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t j
    while i < nb and x > breaks[i]:
        i += 1
    cdef double r = coeffs[i, coeffs.shape[1] - 1]
    for j in range(coeffs.shape[1] - 2, -1, -1):
        r = r * x + coeffs[i, j]
    return r


cdef inline double _radial_coef(const double[:, ::1] coeffs, double s) nogil:
    cdef double r = coeffs[0, coeffs.shape[1] - 1]
    cdef Py_ssize_t j
    for j in range(coeffs.shape[1] - 2, -1, -1):
        r = r * s + coeffs[0, j]
    return r


def xy_chunk(int mode, int dkind, const double[::1] dbreaks,
             const double[:, ::1] dcoeffs, double[:, ::1] state,
             double[:, ::1] mu, const double[:, :, ::1] noise, double sqdt,
             double dt, const double[::1] g_arr, const double[::1] a_half,
             const double[::1] b_half, long step0, long stride,
             double blow_radius, long[::1] blow_step,
             double[:, :, ::1] rec_state, double[:, :, ::1] rec_mu):
    cdef Py_ssize_t n_paths = state.shape[0]
    cdef Py_ssize_t dim = state.shape[1]
    cdef Py_ssize_t n_steps = noise.shape[1]
    cdef Py_ssize_t b, s, d
    cdef long n_global, slot
    cdef double gn, ah, bh, inv, f0, f1, x0, x1, m0, m1, xn0, xn1, mn0, mn1, sa, p
    with nogil:
        for b in range(n_paths):
            if dim == 1:
                x0 = state[b, 0]
                m0 = mu[b, 0]
                for s in range(n_steps):
                    n_global = step0 + s + 1
                    if blow_step[b] < 0:
                        gn = g_arr[s]
                        ah = a_half[s]
                        bh = b_half[s]
                        if mode == _MODE_X:
                            f0 = _poly1d(dbreaks, dcoeffs, x0 - m0)
                            xn0 = x0 + sqdt * noise[b, s, 0] - (dt * gn) * f0
                            inv = 1.0 / (1.0 + bh)
                            mn0 = (m0 * (1.0 - ah) + ah * x0 + bh * xn0) * inv
                        else:
                            f0 = _poly1d(dbreaks, dcoeffs, x0)
                            xn0 = x0 + sqdt * noise[b, s, 0] - (dt * gn) * f0 - (2.0 * ah) * x0
                            mn0 = m0 + ah * x0 + bh * xn0
                        if _fabs(xn0) <= blow_radius:
                            x0 = xn0
                            m0 = mn0
                        else:
                            blow_step[b] = n_global
                    if n_global % stride == 0:
                        slot = n_global / stride
                        rec_state[b, slot, 0] = x0
                        rec_mu[b, slot, 0] = m0
                state[b, 0] = x0
                mu[b, 0] = m0
            else:
                x0 = state[b, 0]; x1 = state[b, 1]
                m0 = mu[b, 0]; m1 = mu[b, 1]
                for s in range(n_steps):
                    n_global = step0 + s + 1
                    if blow_step[b] < 0:
                        gn = g_arr[s]
                        ah = a_half[s]
                        bh = b_half[s]
                        if mode == _MODE_X:
                            sa = (x0 - m0) * (x0 - m0) + (x1 - m1) * (x1 - m1)
                            p = _radial_coef(dcoeffs, sa)
                            f0 = p * (x0 - m0); f1 = p * (x1 - m1)
                            xn0 = x0 + sqdt * noise[b, s, 0] - (dt * gn) * f0
                            xn1 = x1 + sqdt * noise[b, s, 1] - (dt * gn) * f1
                            inv = 1.0 / (1.0 + bh)
                            mn0 = (m0 * (1.0 - ah) + ah * x0 + bh * xn0) * inv
                            mn1 = (m1 * (1.0 - ah) + ah * x1 + bh * xn1) * inv
                        else:
                            sa = x0 * x0 + x1 * x1
                            p = _radial_coef(dcoeffs, sa)
                            f0 = p * x0; f1 = p * x1
                            xn0 = x0 + sqdt * noise[b, s, 0] - (dt * gn) * f0 - (2.0 * ah) * x0
                            xn1 = x1 + sqdt * noise[b, s, 1] - (dt * gn) * f1 - (2.0 * ah) * x1
                            mn0 = m0 + ah * x0 + bh * xn0
                            mn1 = m1 + ah * x1 + bh * xn1
                        if _fabs(xn0) <= blow_radius and _fabs(xn1) <= blow_radius:
                            x0 = xn0; x1 = xn1; m0 = mn0; m1 = mn1
                        else:
                            blow_step[b] = n_global
                    if n_global % stride == 0:
                        slot = n_global / stride
                        rec_state[b, slot, 0] = x0; rec_state[b, slot, 1] = x1
                        rec_mu[b, slot, 0] = m0; rec_mu[b, slot, 1] = m1
                state[b, 0] = x0; state[b, 1] = x1
                mu[b, 0] = m0; mu[b, 1] = m1


def z_chunk(int dkind, const double[::1] dbreaks, const double[:, ::1] dcoeffs,
            double[:, ::1] state, const double[:, :, ::1] noise,
            const double[::1] eps_sqdt, const double[::1] conf, double dt,
            long step0, long stride, double blow_radius, long[::1] blow_step,
            double[:, :, ::1] rec_state):
    cdef Py_ssize_t n_paths = state.shape[0]
    cdef Py_ssize_t dim = state.shape[1]
    cdef Py_ssize_t n_steps = noise.shape[1]
    cdef Py_ssize_t b, s
    cdef long n_global, slot
    cdef double f0, f1, x0, x1, xn0, xn1, sa, p
    with nogil:
        for b in range(n_paths):
            if dim == 1:
                x0 = state[b, 0]
                for s in range(n_steps):
                    n_global = step0 + s + 1
                    if blow_step[b] < 0:
                        f0 = _poly1d(dbreaks, dcoeffs, x0)
                        xn0 = x0 + eps_sqdt[s] * noise[b, s, 0] - dt * (f0 + conf[s] * x0)
                        if _fabs(xn0) <= blow_radius:
                            x0 = xn0
                        else:
                            blow_step[b] = n_global
                    if n_global % stride == 0:
                        rec_state[b, n_global / stride, 0] = x0
                state[b, 0] = x0
            else:
                x0 = state[b, 0]; x1 = state[b, 1]
                for s in range(n_steps):
                    n_global = step0 + s + 1
                    if blow_step[b] < 0:
                        sa = x0 * x0 + x1 * x1
                        p = _radial_coef(dcoeffs, sa)
                        f0 = p * x0; f1 = p * x1
                        xn0 = x0 + eps_sqdt[s] * noise[b, s, 0] - dt * (f0 + conf[s] * x0)
                        xn1 = x1 + eps_sqdt[s] * noise[b, s, 1] - dt * (f1 + conf[s] * x1)
                        if _fabs(xn0) <= blow_radius and _fabs(xn1) <= blow_radius:
                            x0 = xn0; x1 = xn1
                        else:
                            blow_step[b] = n_global
                    if n_global % stride == 0:
                        slot = n_global / stride
                        rec_state[b, slot, 0] = x0; rec_state[b, slot, 1] = x1
                state[b, 0] = x0; state[b, 1] = x1


def coupled_chunk(int dkind, const double[::1] dbreaks,
                  const double[:, ::1] dcoeffs, double[:, ::1] y,
                  double[:, ::1] z, const double[:, :, ::1] noise, double sqdt,
                  double dt, const double[::1] a2, long step0, long stride,
                  double blow_radius, long[::1] blow_step,
                  double[:, :, ::1] rec_y, double[:, :, ::1] rec_z):
    cdef Py_ssize_t n_paths = y.shape[0]
    cdef Py_ssize_t n_steps = noise.shape[1]
    cdef Py_ssize_t b, s
    cdef long n_global, slot
    cdef double fy, fz, dw, y0, z0, yn, zn
    with nogil:
        for b in range(n_paths):
            y0 = y[b, 0]
            z0 = z[b, 0]
            for s in range(n_steps):
                n_global = step0 + s + 1
                if blow_step[b] < 0:
                    fy = _poly1d(dbreaks, dcoeffs, y0)
                    fz = _poly1d(dbreaks, dcoeffs, z0)
                    dw = sqdt * noise[b, s, 0]
                    yn = y0 + dw - dt * fy - a2[s] * y0
                    zn = z0 + dw - dt * fz
                    if _fabs(yn) <= blow_radius and _fabs(zn) <= blow_radius:
                        y0 = yn
                        z0 = zn
                    else:
                        blow_step[b] = n_global
                if n_global % stride == 0:
                    slot = n_global / stride
                    rec_y[b, slot, 0] = y0
                    rec_z[b, slot, 0] = z0
            y[b, 0] = y0
            z[b, 0] = z0
