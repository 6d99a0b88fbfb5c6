# Order-preserving thread map used by the batch commands.
# Results come back in input order whatever the thread count.

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TypeVar

from .config.numerics_config import DEFAULT_THREADS, get_threads
from .errors import ConfigError

T = TypeVar('T')
R = TypeVar('R')


def resolve_threads(value) -> Optional[int]:
    """Thread count from a setting: an integer, 'max' for every core, or None"""
    if value is None:
        return None
    if str(value).strip().lower() == 'max':
        return DEFAULT_THREADS
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"threads must be an integer or 'max', got {value!r}")


def parallel_map(fn: Callable[[T], R], items, threads: Optional[int] = None) -> list[R]:
    items = list(items)
    threads = threads or get_threads()
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))
