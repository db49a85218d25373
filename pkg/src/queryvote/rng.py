"""Seeded random streams with a stable splitting scheme.

All randomness in the package flows through :func:`substream`, which derives
an independent generator from a 64-bit seed and a path of integer tags via
numpy's ``SeedSequence``. The same ``(seed, path)`` yields the same stream on
every platform, and distinct paths yield non-overlapping streams, so work
keyed by path (one voter, one experiment cell) can be filled in parallel
without changing the result.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def _entropy(seed: int, path: tuple[int, ...]) -> list[int]:
    return [int(seed) & _MASK, *(int(p) & _MASK for p in path)]


def substream(seed: int, *path: int) -> np.random.Generator:
    """An independent generator for the given seed and integer tag path."""
    return np.random.default_rng(np.random.SeedSequence(_entropy(seed, path)))


def derive_seed(seed: int, *path: int) -> int:
    """A 64-bit integer seed derived from ``(seed, path)``.

    Used to give nested components (per-election cultures, per-cell
    experiment runs) their own independent seeds.
    """
    return int(np.random.SeedSequence(_entropy(seed, path)).generate_state(1, np.uint64)[0])
