"""Deterministic random-stream management.

All randomness in the package flows from a single integer root seed. The
root seed is expanded with :class:`numpy.random.SeedSequence` and split
into independent child streams by position:

* stream 0 -- impulse count and impulse locations,
* stream 1 -- impulse amplitudes,
* streams 2, 3, ... -- Monte-Carlo trials, one stream per trial.

Splitting by ``SeedSequence.spawn`` guarantees that parallel trials are
statistically independent and bit-reproducible regardless of execution
order.
"""

from __future__ import annotations

import numpy as np

__all__ = ["spawn_generators", "generator"]


def spawn_generators(seed: int, count: int) -> list[np.random.Generator]:
    """Derive ``count`` independent generators from one root seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]


def generator(seed: int) -> np.random.Generator:
    """Single generator for ad-hoc use (not split into sub-streams)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
