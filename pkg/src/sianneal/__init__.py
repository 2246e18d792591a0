"""Self-interacting diffusions under simulated-annealing schedules.

Simulation of dX = dB - g(t) grad V(X - mu_bar) dt and its centered /
time-changed companions, quadrature oracles for the associated Gibbs
measures, trajectory diagnostics (occupation, relative entropy, mean
trackers), energy-landscape barriers and discretized-generator spectra,
plus a config-driven experiment runner.
"""

__version__ = "0.1.0"

from ._backend import available_backends, backend_name, get_backend
from .potentials import make_potential, catalog_ids
from .schedules import constant_schedule, logarithmic_schedule
from .rng import RngStream

__all__ = [
    "__version__",
    "available_backends",
    "backend_name",
    "get_backend",
    "make_potential",
    "catalog_ids",
    "constant_schedule",
    "logarithmic_schedule",
    "RngStream",
]
