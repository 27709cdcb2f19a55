"""Exact, reproducible sampling from the multi-group Curie-Weiss measure.

Sampling is two-stage: the margin S is drawn from its exact law by inverse
CDF, then (N + S)/2 positive votes are placed uniformly at random, which is
the conditional law of a configuration given S.

Every group draws from its own substream. A substream is a PCG64 generator
seeded with ``SeedSequence(entropy=seed, spawn_key=key)``; for configuration
sampling the key is ``(N, hi, lo, occurrence)`` where hi/lo are the upper and
lower 32 bits of the IEEE-754 pattern of β and ``occurrence`` counts earlier
groups with the same (N, β). Reordering groups therefore never changes what
a group draws. Changing this scheme requires bumping ``SAMPLER_VERSION``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import TYPE_CHECKING, Optional

import numpy as np

from cwvote.domain.curie_weiss import magnetization_pmf
from cwvote.domain.errors import OutOfRangeError, ShapeError
from cwvote.domain.models import GroupSpec, SampleBatch, validate_population

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

SEED_LIMIT = 2**64
# Rows of a Monte Carlo draw are generated in chunks of about this many cells.
CHUNK_CELLS = 1 << 20


def validate_seed(seed: int) -> int:
    """Check that the seed is a 64-bit unsigned integer."""
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < SEED_LIMIT:
        raise OutOfRangeError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def _validate_count(n: int, name: str = "sample size") -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise OutOfRangeError(f"{name} must be an integer >= 1, got {n!r}")
    return int(n)


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``key`` under the run seed ``seed``."""
    sequence = np.random.SeedSequence(entropy=validate_seed(seed), spawn_key=tuple(key))
    return np.random.Generator(np.random.PCG64(sequence))


def group_key(spec: GroupSpec, occurrence: int = 0) -> tuple[int, int, int, int]:
    """Substream key of a group: (N, β bits high, β bits low, occurrence)."""
    bits = int(np.float64(spec.beta).view(np.uint64))
    return (spec.N, bits >> 32, bits & 0xFFFFFFFF, occurrence)


@lru_cache(maxsize=256)
def _cdf_table(N: int, beta: float) -> tuple[np.ndarray, np.ndarray]:
    pmf = magnetization_pmf(N, beta)
    cdf = pmf.cumulative()
    cdf.setflags(write=False)
    return pmf.support, cdf


def _draw(N: int, beta: float, shape: tuple[int, ...], stream: np.random.Generator) -> np.ndarray:
    support, cdf = _cdf_table(N, beta)
    return support[np.searchsorted(cdf, stream.random(shape), side="right")]


def sample_magnetizations(
    N: int, beta: float, n: int, stream: np.random.Generator
) -> np.ndarray:
    """Draw n independent margins S from the exact law at (N, β).

    Args:
        N: Population size
        beta: Finite coupling
        n: Number of draws
        stream: Generator to consume, e.g. from :func:`substream`

    Returns:
        Integer array of length n with values in {-N, -N+2, ..., N}

    """
    N = validate_population(N)
    n = _validate_count(n)
    return _draw(N, float(beta), (n,), stream)


def place_votes(
    N: int, magnetizations: np.ndarray, stream: np.random.Generator
) -> np.ndarray:
    """Spread (N + s)/2 positive votes uniformly over N positions per row."""
    positives = (N + np.asarray(magnetizations)) // 2
    keys = stream.random((len(positives), N))
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    return np.where(ranks < positives[:, None], 1, -1).astype(np.int8)


def _group_keys(model: Sequence[GroupSpec]) -> list[tuple[int, int, int, int]]:
    seen: dict[tuple[int, float], int] = {}
    keys = []
    for spec in model:
        identity = (spec.N, spec.beta)
        keys.append(group_key(spec, seen.get(identity, 0)))
        seen[identity] = seen.get(identity, 0) + 1
    return keys


def sample_configurations(
    model: Sequence[GroupSpec],
    n: int,
    seed: int,
    *,
    include_configurations: bool = True,
    max_workers: Optional[int] = None,
) -> SampleBatch:
    """Draw n voting configurations of the whole model.

    Args:
        model: Groups in column order
        n: Number of observations
        seed: 64-bit run seed
        include_configurations: Also place the individual ±1 votes
        max_workers: Thread cap for sampling groups in parallel

    Returns:
        Batch with n × M margins and, if requested, the n × ΣN vote matrix

    Raises:
        ShapeError: If the model is empty

    """
    if not model:
        raise ShapeError("model must contain at least one group")
    specs = tuple(model)
    n = _validate_count(n)
    seed = validate_seed(seed)

    def draw_group(item: tuple[GroupSpec, tuple[int, ...]]) -> tuple[np.ndarray, Optional[np.ndarray]]:
        spec, key = item
        stream = substream(seed, *key)
        margins = sample_magnetizations(spec.N, spec.beta, n, stream)
        votes = place_votes(spec.N, margins, stream) if include_configurations else None
        return margins, votes

    items = list(zip(specs, _group_keys(specs)))
    if max_workers is not None and max_workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            drawn = list(executor.map(draw_group, items))
    else:
        drawn = [draw_group(item) for item in items]

    magnetizations = np.column_stack([margins for margins, _ in drawn])
    configurations = (
        np.hstack([votes for _, votes in drawn if votes is not None])
        if include_configurations
        else None
    )
    logger.debug("sampled n=%d for %d groups with seed %d", n, len(specs), seed)
    return SampleBatch(
        model=specs,
        n=n,
        seed=seed,
        magnetizations=magnetizations,
        configurations=configurations,
    )


def sample_statistic_T(
    N: int, beta: float, n: int, repetitions: int, stream: np.random.Generator
) -> np.ndarray:
    """Realized T for ``repetitions`` independent samples of size n.

    Margins are drawn row by row in chunks, so the result equals a single
    (repetitions × n) draw from ``stream``.
    """
    N = validate_population(N)
    n = _validate_count(n)
    repetitions = _validate_count(repetitions, "repetitions")
    rows_per_chunk = max(1, CHUNK_CELLS // n)
    result = np.empty(repetitions)
    for start in range(0, repetitions, rows_per_chunk):
        stop = min(repetitions, start + rows_per_chunk)
        margins = _draw(N, float(beta), (stop - start, n), stream).astype(np.int64)
        result[start:stop] = (margins * margins).mean(axis=1)
    return result
