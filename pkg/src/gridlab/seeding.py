"""Seed derivation.

One 64-bit run seed drives weight initialisation and every random point set
of a run.  Each consumer gets its own sub-seed derived from (seed, role tag)
so that runs are reproducible independently of execution order:

    weights        network initialisation
    points-x       1D training points / x-axis of a 2D grid
    points-y       y-axis of a 2D grid
    boundary-e0..3 one per boundary edge (bottom, top, left, right)
"""

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def derive_subseed(seed: int, tag: str) -> int:
    """Derive a stable 64-bit sub-seed from a run seed and a role tag."""
    digest = hashlib.blake2b(
        f"{seed & MASK64}:{tag}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "little")


def make_rng(seed: int) -> np.random.Generator:
    """Seeded generator used everywhere randomness is needed."""
    return np.random.Generator(np.random.PCG64(seed & MASK64))
