import logging
from concurrent.futures import ThreadPoolExecutor

from aclab import settings

logger = logging.getLogger(__name__)


def map_grid(fn, values, workers=None):
    """Evaluate `fn` at every grid value, returning results in grid order.

    Worker count defaults to settings.THREADS; one worker runs serially.
    """
    values = list(values)
    workers = min(workers or settings.THREADS, max(len(values), 1))
    if workers <= 1:
        return [fn(value) for value in values]
    logger.debug(f"Evaluating {len(values)} grid points on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, values))
