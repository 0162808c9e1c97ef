"""Deterministic random-number streams for reproducible simulations.

All randomness in the package flows through counter-based Philox generators
keyed by ``SeedSequence(entropy=seed, spawn_key=(stream, item, chunk))``.
Samples are drawn in fixed-size chunks of :data:`CHUNK_SIZE`, each chunk from
its own generator, so a given ``(seed, stream, item)`` always produces the
same values no matter how the surrounding work is split across threads or in
what order results are collected.

Stream identifiers partition the key space between independent consumers:
phase-space sampling, time-series noise, and Monte Carlo sweeps never share
generator states even when given the same seed.
"""

from __future__ import annotations

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

#: Number of scalar samples drawn from one generator before rotating keys.
CHUNK_SIZE = 4096

#: Stream for direct phase-space (I/Q plane) sampling.
STREAM_PHASE_SPACE = 0
#: Stream for voltage noise in synthesized time series.
STREAM_TIMESERIES = 1
#: Stream for Monte Carlo parity sweeps.
STREAM_SWEEP = 2


def chunk_generator(seed: int, stream: int, item: int, chunk: int) -> Generator:
    """Generator for one chunk of one work item of one stream."""
    ss = SeedSequence(entropy=int(seed), spawn_key=(int(stream), int(item), int(chunk)))
    return Generator(Philox(ss))


def standard_normals(seed: int, stream: int, item: int, n: int, dim: int = 1) -> np.ndarray:
    """Draw ``n`` standard-normal samples of dimension ``dim``, chunked.

    Returns an array of shape ``(n, dim)``.  The chunk index advances every
    :data:`CHUNK_SIZE` samples (rows), so partial reads of the same item
    reproduce prefixes of longer reads drawn with the same key.
    """
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    out = np.empty((n, dim), dtype=np.float64)
    for c in range(0, (n + CHUNK_SIZE - 1) // CHUNK_SIZE):
        lo = c * CHUNK_SIZE
        hi = min(n, lo + CHUNK_SIZE)
        rng = chunk_generator(seed, stream, item, c)
        out[lo:hi] = rng.standard_normal((hi - lo, dim))
    return out
