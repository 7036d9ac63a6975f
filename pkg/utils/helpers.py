# utils/helpers.py
# Row-parallel map, wavenumber grids and runtime control helpers used in main.

from __future__ import annotations

import signal
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


# ====== PUBLIC API ======

def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Order-preserving map over independent rows.

    Behavior:
        - workers <= 1 (or a single item) runs serially in the caller's thread.
        - Otherwise a ThreadPoolExecutor evaluates rows concurrently; results
          keep the input order and the first exception is re-raised.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]

    n = min(int(workers), len(items))
    with ThreadPoolExecutor(max_workers=n, thread_name_prefix="rmscat") as pool:
        out = list(pool.map(fn, items))
    logger.debug("Helpers: parallel_map rows=%d workers=%d", len(items), n)
    return out


def linspace_excluding(
    start: float,
    stop: float,
    num: int,
    forbidden: Sequence[Tuple[float, float]] = (),
) -> np.ndarray:
    """numpy.linspace, rejected when any node falls inside a closed forbidden band.

    Raises ValueError naming the first offending node and band.
    """
    if num < 1:
        raise ValueError(f"number of points must be >= 1, got {num}")
    if not stop >= start:
        raise ValueError(f"grid end {stop:g} precedes its start {start:g}")

    grid = np.linspace(float(start), float(stop), int(num))
    for lo, hi in forbidden:
        hit = (grid >= lo) & (grid <= hi)
        if hit.any():
            bad = float(grid[np.argmax(hit)])
            raise ValueError(f"grid node {bad:.9g} lies in the excluded band [{lo:.9g}, {hi:.9g}]")
    return grid


def wavenumber_bands(threshold: float, k_min: float, band: float) -> List[Tuple[float, float]]:
    """Forbidden |k| bands as signed intervals: zero momentum plus +-threshold."""
    bands = [(-k_min, k_min)]
    if threshold > 0.0:
        bands += [(threshold - band, threshold + band), (-threshold - band, -threshold + band)]
    return bands


# ====== RUNTIME HELPERS ======

# --- Shared stop flag exposed to the whole app ---
STOP_EVT = threading.Event()  # Set by signal handlers to request a cooperative stop


def _term_handler(_signum, _frame):
    """Handle SIGINT/SIGTERM by setting STOP_EVT; running checks finish first."""
    logger.warning("Helpers: stop requested by signal %s", _signum)
    STOP_EVT.set()


def setup_signal_handlers() -> None:
    """Register SIGINT/SIGTERM to request a graceful stop via STOP_EVT."""
    signal.signal(signal.SIGINT, _term_handler)  # Ctrl-C
    try:
        signal.signal(signal.SIGTERM, _term_handler)  # kill <pid>
    except (AttributeError, ValueError, OSError):
        # Windows or a non-main thread; Ctrl-C still works
        pass


def stop_requested(timeout: Optional[float] = None) -> bool:
    """True once a stop was requested; optionally wait up to `timeout` seconds."""
    if timeout is None:
        return STOP_EVT.is_set()
    return STOP_EVT.wait(timeout)
