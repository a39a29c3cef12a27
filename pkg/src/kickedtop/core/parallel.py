"""
Worker pool for independent simulation cells.

Results always come back in input order, so nothing downstream depends on
how many threads did the work. numpy releases the GIL inside its linear
algebra kernels, which is where the cells spend their time.
"""

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, TypeVar

from kickedtop.core.logger import get_logger

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Thread pool with an ordered map."""

    def __init__(self, threads: int = 1) -> None:
        """Initialize the pool.

        Args:
            threads: Number of worker threads. 1 runs everything inline.
        """
        if threads < 1:
            raise ValueError(f"threads must be >= 1, got {threads}")
        self.threads = threads
        self._executor: Optional[ThreadPoolExecutor] = None
        self.logger = get_logger("parallel")

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply fn to every item, returning results in input order.

        Args:
            fn: Pure function of one item.
            items: Work items.

        Returns:
            List of results aligned with items.
        """
        work = list(items)
        if self.threads == 1 or len(work) <= 1:
            return [fn(item) for item in work]

        if self._executor is None:
            self._executor = ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="kickedtop")
        self.logger.debug(f"Dispatching {len(work)} cells to {self.threads} threads")
        return list(self._executor.map(fn, work))

    def shutdown(self) -> None:
        """Stop the worker threads."""
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "WorkerPool":
        """Context manager entry."""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Context manager exit; joins the threads."""
        self.shutdown()


def resolve_pool(pool: Optional[WorkerPool]) -> WorkerPool:
    """Return the given pool or a single-threaded one."""
    return pool if pool is not None else WorkerPool(1)
