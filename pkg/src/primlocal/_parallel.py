"""Trial-level parallel map with deterministic ordering.

The PRIMLOCAL_THREADS environment variable caps the worker count; the
results are always returned in trial order regardless of scheduling.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def max_workers() -> int:
    raw = os.environ.get("PRIMLOCAL_THREADS", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def trial_map(fn, trials: int):
    """Apply fn(trial_index) for indices 0..trials-1, in index order."""
    workers = min(max_workers(), trials)
    if workers <= 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials)))
