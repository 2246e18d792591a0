"""Deterministic CSV output: fixed column order, repr-exact float formatting
(%.17g round-trips float64), LF newlines.  Reruns with the same data emit
byte-identical files."""

from __future__ import annotations

import numpy as np

__all__ = ["write_csv"]


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def write_csv(path, columns, arrays):
    arrays = [np.asarray(a) for a in arrays]
    n = arrays[0].shape[0]
    if any(a.shape[0] != n for a in arrays):
        raise ValueError("CSV columns must have equal length")
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for i in range(n):
            fh.write(",".join(_fmt(a[i]) for a in arrays) + "\n")
