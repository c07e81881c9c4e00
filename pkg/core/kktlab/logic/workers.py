import logging
import multiprocessing
import os
import sys
import traceback
from typing import Any, Callable, List, Optional, Sequence

from kktlab.config.settings import SCAN_CHUNK_SIZE, THREADS_ENV

logger = logging.getLogger(__name__)

# Worker-process state installed by _init_worker.
_WORKER_FN = None
_WORKER_PAYLOAD = None


def resolve_threads(configured: Optional[int] = None) -> int:
    """
    Number of worker processes: KKTLAB_THREADS wins over the configured value, which wins
    over the cpu count.

    :param configured: thread count from the run configuration, None for automatic.
    :return: a positive process count.
    """
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning(f"ignoring non-integer {THREADS_ENV}={env!r}")
    if configured:
        return max(1, int(configured))
    try:
        return multiprocessing.cpu_count()
    except NotImplementedError:
        return 1


def chunked(items: Sequence[Any], size: int = SCAN_CHUNK_SIZE) -> List[Sequence[Any]]:
    return [items[i:i + size] for i in range(0, len(items), size)]


def _init_worker(fn, payload):
    global _WORKER_FN, _WORKER_PAYLOAD
    _WORKER_FN = fn
    _WORKER_PAYLOAD = payload


def _run_chunk(chunk):
    return _WORKER_FN(_WORKER_PAYLOAD, chunk)


def scan_chunks(fn: Callable[[Any, Sequence[Any]], Any], payload: Any, chunks: List[Sequence[Any]],
                threads: int = 1) -> List[Any]:
    """
    Evaluates fn(payload, chunk) for every chunk, in a process pool when threads > 1.
    Results come back in completion order; callers merge them order-independently.

    :param fn: module-level function so it can be pickled.
    :param payload: read-only data shipped once per worker process.
    :param chunks: work split into chunks.
    :param threads: number of processes.
    :return: list of per-chunk results.
    """
    if threads <= 1 or len(chunks) <= 1:
        return [fn(payload, chunk) for chunk in chunks]

    pool = multiprocessing.Pool(min(threads, len(chunks)), initializer=_init_worker, initargs=(fn, payload))
    results = []
    iterator = pool.imap_unordered(_run_chunk, chunks)
    while True:
        try:
            results.append(next(iterator))
        except multiprocessing.TimeoutError:
            continue
        except StopIteration:
            break
        except Exception:
            print("Failed scanning chunk", file=sys.stderr)
            traceback.print_exc(file=sys.stderr)
            pool.terminate()
            raise
    pool.close()
    pool.join()
    logger.debug(f"scanned {len(chunks)} chunks on {threads} processes")
    return results
