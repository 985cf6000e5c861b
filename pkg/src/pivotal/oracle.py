"""Independent checks of the analytic voting-power formulas.

Nothing here imports the combinatorics or power code paths: enumeration walks
every outcome of the other voters, and Monte Carlo samples vote tallies.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .power import ResourceLimitError, VotingScheme

ENUMERATION_CAP = {VotingScheme.BINARY: 22, VotingScheme.TERNARY: 14}
SHARD_SIZE = 1 << 18

# margin contribution (yes - no) of each option
_MARGINS = {
    VotingScheme.BINARY: np.array([1, -1], dtype=np.int8),
    VotingScheme.TERNARY: np.array([1, -1, 0], dtype=np.int8),
}


def enumerate_pivot_probability(n_others: int, scheme: VotingScheme) -> Fraction:
    """Exact pivot probability by sweeping all outcomes of the other voters."""
    if n_others < 0:
        raise ValueError(f"n_others must be non-negative, got {n_others}")
    if n_others > ENUMERATION_CAP[scheme]:
        raise ResourceLimitError(
            f"enumeration of {scheme.value} outcomes capped at N={ENUMERATION_CAP[scheme]}"
        )
    options = _MARGINS[scheme]
    # one entry per outcome: margin = yes - no among the other voters
    margins = np.zeros(1, dtype=np.int8)
    for _ in range(n_others):
        margins = (margins[:, None] + options[None, :]).ravel()
    # focal yes: margin + 1 > 0; focal no: margin - 1 <= 0
    decisive = (margins + 1 > 0) & (margins - 1 <= 0)
    return Fraction(int(np.count_nonzero(decisive)), len(options) ** n_others)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int
    hits: int


def _threads() -> int:
    env = os.environ.get("PIVOTAL_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _shard_hits(n_others: int, scheme: VotingScheme, samples: int, seed: int, shard: int) -> int:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(shard,))))
    if scheme is VotingScheme.BINARY:
        yes = rng.binomial(n_others, 0.5, size=samples)
        no = n_others - yes
    else:
        yes = rng.binomial(n_others, 1 / 3, size=samples)
        no = rng.binomial(n_others - yes, 0.5)
    margin = yes - no
    return int(np.count_nonzero((margin == 0) | (margin == 1)))


def monte_carlo_pivot(
    n_others: int,
    scheme: VotingScheme,
    samples: int,
    seed: int,
    threads: int | None = None,
) -> McEstimate:
    """Estimate the pivot probability from ``samples`` random tallies.

    Only the yes and no counts are drawn (binomial, then binomial of the
    remainder for ternary). Samples are split into fixed-size shards whose
    streams derive from ``(seed, shard index)``, so the result does not depend
    on the number of worker threads.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if n_others < 0:
        raise ValueError(f"n_others must be non-negative, got {n_others}")
    sizes = [SHARD_SIZE] * (samples // SHARD_SIZE)
    if samples % SHARD_SIZE:
        sizes.append(samples % SHARD_SIZE)
    workers = threads or _threads()
    args = [(n_others, scheme, size, seed, i) for i, size in enumerate(sizes)]
    if workers == 1 or len(args) == 1:
        hits = sum(_shard_hits(*a) for a in args)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda a: _shard_hits(*a), args))
    mean = hits / samples
    return McEstimate(mean, math.sqrt(mean * (1 - mean) / samples), samples, seed, hits)
