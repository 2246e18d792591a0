"""Time stepping for the five processes of the study.

* ``simulate_X``            dX = dB - g(t) grad V(X - mu_bar) dt, with the
                            empirical-mean channel mu_bar advanced by the
                            exact linear ODE mu' = (X - mu)/(r + t)
                            (trapezoidal rule).
* ``simulate_Y``            the centered system dY = dB - g(t) grad V(Y) dt
                            - Y dt/(r+t), mean channel d mu = Y dt/(r+t).
* ``simulate_Z_annealed``   time-changed annealed process
                            dZ = eps(t) dB - (grad V(Z) + 2 Z / a(t)) dt;
                            the confinement coefficient is the gradient of
                            |x|^2/a(t), so the frozen dynamics is exactly
                            reversible for the Gibbs density.
* ``simulate_kolmogorov``   dZ = dB - grad V(Z) dt (unit gain).
* ``simulate_coupled_YZ``   (Y, Z) driven by one shared Brownian path.

Euler-Maruyama throughout, dt default 1e-3; states are recorded every
``stride`` steps.  Paths exceeding the blow-up radius are frozen and
flagged.  Every trajectory is a pure function of (inputs, seed, stream
index); ensemble members own disjoint stream indices and may be simulated
in a worker pool without changing any output bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_backend
from .rng import RngStream

__all__ = [
    "Trajectory",
    "Ensemble",
    "simulate_X",
    "simulate_Y",
    "simulate_Z_annealed",
    "simulate_kolmogorov",
    "simulate_coupled_YZ",
    "simulate_ensemble",
]

DEFAULT_DT = 1e-3
DEFAULT_STRIDE = 100
DEFAULT_BLOW_RADIUS = 1e6
CHUNK_STEPS = 8192

MODE_X = 0
MODE_Y = 1


@dataclass
class Trajectory:
    kind: str
    times: np.ndarray            # [n_rec]
    states: np.ndarray           # [n_rec, d]
    mu: np.ndarray | None = None
    z_states: np.ndarray | None = None   # coupled kind: the Z member
    gap2: np.ndarray | None = None       # coupled kind: |Y - Z|^2
    dt: float = DEFAULT_DT
    stride: int = DEFAULT_STRIDE
    seed: int = 0
    stream_index: int = 0
    blown_up: bool = False
    blow_time: float | None = None

    @property
    def dim(self):
        return self.states.shape[1]

    def to_csv(self, path):
        d = self.dim
        cols = ["t"] + [f"x{i+1}" for i in range(d)]
        data = [self.times] + [self.states[:, i] for i in range(d)]
        if self.mu is not None:
            cols += [f"mu{i+1}" for i in range(d)]
            data += [self.mu[:, i] for i in range(d)]
        if self.gap2 is not None:
            cols.append("gap2")
            data.append(self.gap2)
        from .csvio import write_csv
        write_csv(path, cols, data)


@dataclass
class Ensemble:
    kind: str
    times: np.ndarray            # [n_rec]
    states: np.ndarray           # [P, n_rec, d]
    mu: np.ndarray | None = None
    z_states: np.ndarray | None = None
    gap2: np.ndarray | None = None       # [P, n_rec]
    blow_step: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    dt: float = DEFAULT_DT
    stride: int = DEFAULT_STRIDE
    seed: int = 0

    @property
    def n_paths(self):
        return self.states.shape[0]

    @property
    def blown_fraction(self):
        if self.blow_step.size == 0:
            return 0.0
        return float(np.mean(self.blow_step >= 0))

    def path(self, i):
        blown = self.blow_step[i] >= 0
        n = self.times.size
        if blown:
            n = min(n, int(self.blow_step[i]) // self.stride + 1)
        return Trajectory(
            self.kind, self.times[:n].copy(), self.states[i, :n].copy(),
            None if self.mu is None else self.mu[i, :n].copy(),
            None if self.z_states is None else self.z_states[i, :n].copy(),
            None if self.gap2 is None else self.gap2[i, :n].copy(),
            self.dt, self.stride, self.seed, i, bool(blown),
            float(self.blow_step[i] * self.dt) if blown else None,
        )


def _as_states(x, n_paths, dim):
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = np.full((n_paths, dim), float(x))
    elif x.shape == (dim,) and dim > 1:
        x = np.tile(x, (n_paths, 1))
    elif x.shape == (n_paths,) and dim == 1:
        x = x[:, None]
    elif x.shape != (n_paths, dim):
        x = np.broadcast_to(x, (n_paths, dim)).copy()
    return np.ascontiguousarray(x, dtype=float)


def _check_horizon(horizon, dt):
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if horizon < dt:
        raise ValueError("horizon must be >= dt")
    n_steps = int(round(horizon / dt))
    if abs(n_steps * dt - horizon) > 1e-9 * max(1.0, horizon):
        raise ValueError("horizon must be an integer multiple of dt")
    return n_steps


def _run_block(kind, potential, schedule, r, state0, mu0, z0, horizon, dt,
               seed, stream_indices, stride, zero_noise, frozen, blow_radius,
               backend_name=None):
    """Advance a block of paths; the heart shared by all simulate_* calls."""
    backend = get_backend(backend_name)
    n_paths = state0.shape[0]
    dim = state0.shape[1]
    n_steps = _check_horizon(horizon, dt)
    n_rec = n_steps // stride + 1
    dkind, dbreaks, dcoeffs = potential.drift_spec()
    dbreaks = np.ascontiguousarray(dbreaks, dtype=float)
    dcoeffs = np.ascontiguousarray(dcoeffs, dtype=float)

    state = state0.copy()
    mu = mu0.copy() if mu0 is not None else None
    zst = z0.copy() if z0 is not None else None
    blow_step = np.full(n_paths, -1, dtype=np.int64)
    rec_state = np.zeros((n_paths, n_rec, dim))
    rec_state[:, 0, :] = state
    rec_mu = rec_z = None
    if kind in ("X", "Y_mu"):
        rec_mu = np.zeros((n_paths, n_rec, dim))
        rec_mu[:, 0, :] = mu
    if kind == "coupled_YZ":
        rec_z = np.zeros((n_paths, n_rec, dim))
        rec_z[:, 0, :] = zst

    gens = None
    if not zero_noise:
        gens = [RngStream(seed, idx).generator() for idx in stream_indices]
    sqdt = math.sqrt(dt)

    for step0 in range(0, n_steps, CHUNK_STEPS):
        s_chunk = min(CHUNK_STEPS, n_steps - step0)
        t_lo = (step0 + np.arange(s_chunk + 1, dtype=float)) * dt
        if zero_noise:
            noise = np.zeros((n_paths, s_chunk, dim))
        else:
            noise = np.empty((n_paths, s_chunk, dim))
            for b, g in enumerate(gens):
                noise[b] = g.standard_normal((s_chunk, dim))

        if kind in ("X", "Y_mu"):
            g_arr = np.ascontiguousarray(np.atleast_1d(schedule.g(t_lo[:-1])), dtype=float)
            a_half = np.ascontiguousarray((dt / 2.0) / (r + t_lo[:-1]))
            b_half = np.ascontiguousarray((dt / 2.0) / (r + t_lo[1:]))
            backend.xy_chunk(MODE_X if kind == "X" else MODE_Y, dkind, dbreaks,
                             dcoeffs, state, mu, noise, sqdt, dt, g_arr,
                             a_half, b_half, step0, stride, blow_radius,
                             blow_step, rec_state, rec_mu)
        elif kind in ("Z_annealed", "Z_kolmogorov"):
            if kind == "Z_kolmogorov":
                eps_sqdt = np.full(s_chunk, sqdt)
                conf = np.zeros(s_chunk)
            elif frozen is not None:
                eps2_0, a_0 = frozen
                eps_sqdt = np.full(s_chunk, math.sqrt(eps2_0 * dt))
                conf = np.full(s_chunk, 0.0 if math.isinf(a_0) else 2.0 / a_0)
            else:
                eps2, a = schedule.annealing_coefficients(t_lo[:-1], r)
                eps_sqdt = np.ascontiguousarray(np.sqrt(eps2 * dt))
                conf = np.ascontiguousarray(2.0 / a)
            backend.z_chunk(dkind, dbreaks, dcoeffs, state, noise, eps_sqdt,
                            conf, dt, step0, stride, blow_radius, blow_step,
                            rec_state)
        elif kind == "coupled_YZ":
            a2 = np.ascontiguousarray(dt / (r + t_lo[:-1]))
            backend.coupled_chunk(dkind, dbreaks, dcoeffs, state, zst, noise,
                                  sqdt, dt, a2, step0, stride, blow_radius,
                                  blow_step, rec_state, rec_z)
        else:
            raise ValueError(f"unknown process kind {kind!r}")

    times = np.arange(n_rec, dtype=float) * (stride * dt)
    return dict(times=times, states=rec_state, mu=rec_mu, z=rec_z,
                blow_step=blow_step)


def _single(kind, res, dt, stride, seed, index):
    blown = res["blow_step"][0] >= 0
    n = res["times"].size
    if blown:
        n = min(n, int(res["blow_step"][0]) // stride + 1)
    gap2 = None
    if res["z"] is not None:
        diff = res["states"][0, :n] - res["z"][0, :n]
        gap2 = np.sum(diff * diff, axis=-1)
    return Trajectory(kind, res["times"][:n], res["states"][0, :n],
                      None if res["mu"] is None else res["mu"][0, :n],
                      None if res["z"] is None else res["z"][0, :n],
                      gap2, dt, stride, seed, index, bool(blown),
                      float(res["blow_step"][0] * dt) if blown else None)


def simulate_X(potential, schedule, r, x0, mu0, horizon, dt=DEFAULT_DT,
               rng=None, stride=DEFAULT_STRIDE, zero_noise=False,
               blow_radius=DEFAULT_BLOW_RADIUS, backend=None):
    """Self-interacting diffusion with its empirical-mean channel."""
    rng = rng or RngStream(0, 0)
    d = potential.dim
    s0 = _as_states(x0, 1, d)
    m0 = _as_states(mu0, 1, d)
    res = _run_block("X", potential, schedule, r, s0, m0, None, horizon, dt,
                     rng.seed, [rng.index], stride, zero_noise, None,
                     blow_radius, backend)
    return _single("X", res, dt, stride, rng.seed, rng.index)


def simulate_Y(potential, schedule, r, y0, horizon, dt=DEFAULT_DT, rng=None,
               mu0=0.0, stride=DEFAULT_STRIDE, zero_noise=False,
               blow_radius=DEFAULT_BLOW_RADIUS, backend=None):
    """Centered system Y = X - mu_bar with the mean channel integrating
    Y dt/(r+t)."""
    rng = rng or RngStream(0, 0)
    d = potential.dim
    res = _run_block("Y_mu", potential, schedule, r, _as_states(y0, 1, d),
                     _as_states(mu0, 1, d), None, horizon, dt, rng.seed,
                     [rng.index], stride, zero_noise, None, blow_radius, backend)
    return _single("Y_mu", res, dt, stride, rng.seed, rng.index)


def simulate_Z_annealed(potential, schedule, r, z0, horizon, dt=DEFAULT_DT,
                        rng=None, stride=DEFAULT_STRIDE, zero_noise=False,
                        frozen=None, blow_radius=DEFAULT_BLOW_RADIUS,
                        backend=None):
    """Annealed time-changed process; ``frozen=(eps2, a)`` pins the
    temperature and confinement for stationarity tests (a may be inf)."""
    rng = rng or RngStream(0, 0)
    d = potential.dim
    res = _run_block("Z_annealed", potential, schedule, r,
                     _as_states(z0, 1, d), None, None, horizon, dt, rng.seed,
                     [rng.index], stride, zero_noise, frozen, blow_radius, backend)
    return _single("Z_annealed", res, dt, stride, rng.seed, rng.index)


def simulate_kolmogorov(potential, z0, horizon, dt=DEFAULT_DT, rng=None,
                        stride=DEFAULT_STRIDE, zero_noise=False,
                        blow_radius=DEFAULT_BLOW_RADIUS, backend=None):
    """Unit-gain gradient diffusion dZ = dB - grad V(Z) dt."""
    rng = rng or RngStream(0, 0)
    d = potential.dim
    res = _run_block("Z_kolmogorov", potential, None, 1.0,
                     _as_states(z0, 1, d), None, None, horizon, dt, rng.seed,
                     [rng.index], stride, zero_noise, None, blow_radius, backend)
    return _single("Z_kolmogorov", res, dt, stride, rng.seed, rng.index)


def simulate_coupled_YZ(potential, r, y0, horizon, dt=DEFAULT_DT, rng=None,
                        z0=None, stride=DEFAULT_STRIDE, zero_noise=False,
                        blow_radius=DEFAULT_BLOW_RADIUS, backend=None):
    """(Y, Z) advanced with identical Gaussian increments (unit gain)."""
    if potential.dim != 1:
        raise ValueError("coupled pair study is one-dimensional")
    rng = rng or RngStream(0, 0)
    z0 = y0 if z0 is None else z0
    res = _run_block("coupled_YZ", potential, None, r, _as_states(y0, 1, 1),
                     None, _as_states(z0, 1, 1), horizon, dt, rng.seed,
                     [rng.index], stride, zero_noise, None, blow_radius, backend)
    return _single("coupled_YZ", res, dt, stride, rng.seed, rng.index)


_KIND_NEEDS = {
    "X": ("mu0",),
    "Y_mu": ("mu0",),
    "Z_annealed": (),
    "Z_kolmogorov": (),
    "coupled_YZ": ("z0",),
}


def simulate_ensemble(kind, potential, schedule, r, init, horizon,
                      dt=DEFAULT_DT, seed=0, n_paths=1, base_stream=0,
                      mu0=0.0, z0=None, stride=DEFAULT_STRIDE,
                      zero_noise=False, frozen=None,
                      blow_radius=DEFAULT_BLOW_RADIUS, workers=1,
                      backend=None):
    """Simulate ``n_paths`` independent paths (stream indices
    base_stream .. base_stream + n_paths - 1) and stack the records.

    ``init`` (and ``z0`` for the coupled kind) may be scalars or per-path
    arrays.  With ``workers > 1`` path blocks run in a process pool; results
    are merged in path order so the output is identical to a serial run.
    """
    if kind not in _KIND_NEEDS:
        raise ValueError(f"unknown process kind {kind!r}")
    d = potential.dim
    state0 = _as_states(init, n_paths, d)
    m0 = _as_states(mu0, n_paths, d) if kind in ("X", "Y_mu") else None
    zz0 = None
    if kind == "coupled_YZ":
        zz0 = _as_states(init if z0 is None else z0, n_paths, d)
    indices = list(range(base_stream, base_stream + n_paths))

    if workers <= 1 or n_paths == 1:
        res = _run_block(kind, potential, schedule, r, state0, m0, zz0,
                         horizon, dt, seed, indices, stride, zero_noise,
                         frozen, blow_radius, backend)
    else:
        blocks = np.array_split(np.arange(n_paths), min(workers, n_paths))
        futures = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for blk in blocks:
                if blk.size == 0:
                    continue
                futures.append(pool.submit(
                    _run_block, kind, potential, schedule, r,
                    state0[blk], None if m0 is None else m0[blk],
                    None if zz0 is None else zz0[blk], horizon, dt, seed,
                    [indices[i] for i in blk], stride, zero_noise, frozen,
                    blow_radius, backend))
            parts = [f.result() for f in futures]
        res = dict(times=parts[0]["times"],
                   states=np.concatenate([p["states"] for p in parts]),
                   mu=None if parts[0]["mu"] is None else
                       np.concatenate([p["mu"] for p in parts]),
                   z=None if parts[0]["z"] is None else
                       np.concatenate([p["z"] for p in parts]),
                   blow_step=np.concatenate([p["blow_step"] for p in parts]))

    gap2 = None
    if res["z"] is not None:
        diff = res["states"] - res["z"]
        gap2 = np.sum(diff * diff, axis=-1)
    return Ensemble(kind, res["times"], res["states"], res["mu"], res["z"],
                    gap2, res["blow_step"], dt, stride, seed)
