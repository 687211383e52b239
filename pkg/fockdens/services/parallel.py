"""Seeded fan-out of independent grid cells over a thread pool."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

from fockdens.models.config import Settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
CellKey = tuple[int, ...]


def cell_seed(master_seed: int, key: CellKey) -> int:
    """Derive a cell's seed from the master seed and its grid key."""
    state = np.random.SeedSequence([master_seed, *key]).generate_state(1)
    return int(state[0])


def map_cells(
    func: Callable[[CellKey, int], T],
    keys: Sequence[CellKey],
    master_seed: int,
    threads: int | None = None,
) -> list[T]:
    """Evaluate ``func(key, seed)`` for every key; results follow ``keys`` order.

    The worker count is capped by ``threads`` (``FOCKDENS_THREADS`` when
    omitted). Seeds depend only on the master seed and the key, so results
    do not depend on scheduling.
    """
    if not keys:
        return []
    cap = threads if threads is not None else Settings.from_env().threads
    workers = max(1, min(cap, len(keys)))
    seeds = [cell_seed(master_seed, key) for key in keys]
    logger.debug("evaluating %d cells on %d threads (seed %d)", len(keys), workers, master_seed)
    if workers == 1:
        return [func(key, seed) for key, seed in zip(keys, seeds, strict=True)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, keys, seeds))
