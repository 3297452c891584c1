"""Order-preserving map over worker processes, capped by BESSELWELL_THREADS."""
import os
from concurrent.futures import ProcessPoolExecutor

ENV_VAR = "BESSELWELL_THREADS"
MIN_PARALLEL_ITEMS = 64


def worker_count(environ=None):
    """Worker cap from the environment; 0 or unset means one per CPU.

    Raises ValueError for anything that is not a non-negative integer.
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_VAR, "").strip()
    if not raw:
        return os.cpu_count() or 1
    value = int(raw)
    if value < 0:
        raise ValueError(f"{ENV_VAR} must be >= 0, got {raw!r}")
    return value or (os.cpu_count() or 1)


def parallel_map(func, items, workers=None):
    """list(map(func, items)), fanned out to processes for long inputs.

    Results come back in input order, so output does not depend on
    scheduling. ``func`` must be picklable.
    """
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) < MIN_PARALLEL_ITEMS:
        return [func(item) for item in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunk))
