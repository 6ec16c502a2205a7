"""Deterministic random-stream derivation.

Every stochastic routine takes an explicit numpy ``Generator``.  Streams for
distinct purposes are derived from a single master seed through
``SeedSequence`` spawn keys feeding a counter-based Philox generator, so
trials can be dispatched to any number of threads and the result of trial r
never depends on scheduling order.
"""
from __future__ import annotations

import numpy as np

# domain tags keep unrelated consumers of the same master seed independent
DOMAIN_SAMPLE = 0      # ensemble matrix sampling, path (DOMAIN_SAMPLE, trial)
DOMAIN_REPLACE = 1     # unit-variance replacement draws
DOMAIN_BERNOULLI = 2   # bernstein tail simulations


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    """Generator for the stream addressed by ``path`` under ``master_seed``."""
    if master_seed < 0:
        raise ValueError("master seed must be a nonnegative integer")
    ss = np.random.SeedSequence(master_seed, spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))
