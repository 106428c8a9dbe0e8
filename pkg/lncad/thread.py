# -*- coding: utf-8 -*-

"""Worker pool for per-volume jobs.

Results always come back in input order, so the output never depends on
the number of workers.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import TypeVar, Callable, Iterable, List
from time import process_time
from concurrent.futures import ThreadPoolExecutor
from psutil import cpu_count
from lncad.info.logging_handler import logger

_T = TypeVar('_T')
_R = TypeVar('_R')


def default_workers() -> int:
    """Number of physical cores, at least one."""
    return cpu_count(logical=False) or 1


def ordered_map(
    func: Callable[[_T], _R],
    items: Iterable[_T],
    workers: int = 1
) -> List[_R]:
    """Apply the function to every item, keeping the input order."""
    items = list(items)
    t0 = process_time()
    if workers <= 1 or len(items) <= 1:
        results = [func(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(func, items))
    logger.debug(
        f"{len(items)} jobs on {max(workers, 1)} worker(s): "
        f"{process_time() - t0:.02f}s")
    return results
