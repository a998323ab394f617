"""Deterministic random streams.

Every stochastic routine takes an explicit ``Rng``; identical seeds give
identical outcome sequences on every platform (PCG64). Child streams are
derived with a counter-based spawn scheme so that trajectory i of a run is
reproducible regardless of how many trajectories run in parallel.
"""
from __future__ import annotations

import numpy as np


class Rng:
    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def random(self, size=None):
        return self._gen.random(size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size=size)

    def choice_sign(self, size=None):
        """Uniform +/-1 draws."""
        return 2 * self._gen.integers(0, 2, size=size) - 1

    def child(self, index: int) -> "Rng":
        """Deterministic substream #index of this seed."""
        ss = np.random.SeedSequence(self.seed, spawn_key=(int(index),))
        rng = object.__new__(Rng)
        rng.seed = self.seed
        rng._gen = np.random.Generator(np.random.PCG64(ss))
        return rng
