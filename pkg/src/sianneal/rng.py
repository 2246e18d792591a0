"""Counter-based random streams: (seed, stream index) -> independent
Philox generator.  Replays are bit-identical; distinct indices give
independent-by-construction streams, so ensemble members can be simulated
in any order or process and still reproduce exactly."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["RngStream"]


@dataclass
class RngStream:
    seed: int
    index: int = 0
    counter: int = field(default=0, compare=False)  # chunks drawn, informational

    def generator(self):
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.index,))
        return np.random.Generator(np.random.Philox(ss))

    def spawn(self, index):
        return RngStream(self.seed, index)
