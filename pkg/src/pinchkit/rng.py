"""Keyed random streams.

Every random draw in pinchkit comes from ``stream(seed, *key)``: a PCG64
generator seeded by ``SeedSequence(seed, spawn_key=key)``. A stream depends
only on the master seed and its key, never on how work is scheduled, so
batch results do not change with the worker count.
"""

import os

import numpy as np

ENV_SEED = "PINCHKIT_SEED"
DEFAULT_SEED = 0


def stream(seed, *key):
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(x) for x in key))
    return np.random.Generator(np.random.PCG64(ss))


def resolve_seed(seed=None):
    """Explicit seed, else ``$PINCHKIT_SEED``, else 0."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(ENV_SEED)
    return int(env) if env else DEFAULT_SEED
