"""Deterministic integer sampling for generic-point arguments."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np


@dataclass(frozen=True)
class SamplingPolicy:
    """How many points to draw and from which boxes.

    Points are integer vectors with coordinates in ``[-bound, bound]`` for each
    bound in ``bounds`` in turn, ``trials`` per box.  Every draw has its own
    generator seeded from ``(seed, stage, trial)`` so results do not depend on
    evaluation order.
    """

    trials: int = 8
    bounds: tuple[int, ...] = (1000,)
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.bounds or any(b < 1 for b in self.bounds):
            raise ValueError("bounds must be positive")

    def points(self, dim: int) -> Iterator[tuple[int, ...]]:
        """Yield nonzero integer vectors of length ``dim`` in a fixed order."""
        for stage, bound in enumerate(self.bounds):
            for trial in range(self.trials):
                yield nonzero_point(dim, bound, (self.seed, stage, trial))

    def as_dict(self) -> dict:
        return {"trials": self.trials, "bounds": list(self.bounds), "seed": self.seed}


# Escalating boxes used for the skew pencil witness search.
PENCIL_POLICY = SamplingPolicy(trials=8, bounds=(10, 100, 1000), seed=0)
# Single wide box used for the deformation complex.
COMPLEX_POLICY = SamplingPolicy(trials=8, bounds=(1000,), seed=0)


def rng_for(*key: int) -> np.random.Generator:
    return np.random.default_rng([abs(k) for k in key] + [int(k < 0) for k in key])


def nonzero_point(dim: int, bound: int, key: tuple[int, ...]) -> tuple[int, ...]:
    if dim == 0:
        return ()
    rng = rng_for(*key)
    while True:
        v = tuple(int(x) for x in rng.integers(-bound, bound, size=dim, endpoint=True))
        if any(v):
            return v


def with_seed(policy: SamplingPolicy, seed: int) -> SamplingPolicy:
    return SamplingPolicy(trials=policy.trials, bounds=policy.bounds, seed=seed)
