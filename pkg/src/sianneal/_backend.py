"""Backend selection: compiled Cython kernels when importable, numpy
fallback otherwise.  SIANNEAL_BACKEND=python|compiled forces the choice."""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels  # compiled extension, optional
except ImportError:  # pragma: no cover - depends on build environment
    _kernels = None


def available_backends():
    names = ["python"]
    if _kernels is not None:
        names.insert(0, "compiled")
    return names


def get_backend(name=None):
    name = name or os.environ.get("SIANNEAL_BACKEND", "")
    if name in ("", "auto"):
        return _kernels if _kernels is not None else _kernels_py
    if name in ("compiled", "cython"):
        if _kernels is None:
            raise RuntimeError("compiled kernels are not available; build the "
                               "extension or set SIANNEAL_BACKEND=python")
        return _kernels
    if name in ("python", "numpy"):
        return _kernels_py
    raise ValueError(f"unknown backend {name!r}")


def backend_name(backend=None):
    return (backend or get_backend()).BACKEND_NAME
