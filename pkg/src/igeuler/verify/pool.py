"""Sample-parallel evaluation with results gathered by sample index."""

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

_logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: int | None = None) -> int:
    """Pick a worker count: explicit value, then ``IGEULER_JOBS``, then the core count."""
    if jobs:
        return max(1, jobs)
    env_jobs = os.environ.get("IGEULER_JOBS", "")
    if env_jobs.strip():
        try:
            return max(1, int(env_jobs))
        except ValueError:
            _logger.warning("ignoring non-integer IGEULER_JOBS=%r", env_jobs)
    return os.cpu_count() or 1


def ordered_map(
    func: Callable[[T], R], items: Iterable[T], jobs: int | None = None
) -> list[R]:
    """Apply ``func`` to every item on a thread pool, keeping input order.

    :param func: pure function of one sample
    :param items: samples
    :param jobs: worker count (see :func:`resolve_jobs`)
    :return: results in the order of ``items``, independent of ``jobs``
    """
    items = list(items)
    workers = min(resolve_jobs(jobs), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    _logger.debug("mapping %s samples on %s threads", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
