"""Work queue for independent verification jobs.

One discretize-and-solve run is single-threaded; independent
(family, parameters) jobs are submitted together and collected in
submission order.  Results are immutable once constructed, so handing
them across threads needs no locking.  Failures are captured per job
rather than aborting the batch.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

__all__ = ["JobOutcome", "run_jobs"]


@dataclass(frozen=True)
class JobOutcome:
    """Result or captured failure of one job, in submission order."""

    label: str
    value: Any = None
    error: Optional[BaseException] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def run_jobs(
    jobs: Sequence[tuple[str, Callable[[], Any]]],
    max_workers: Optional[int] = None,
) -> list[JobOutcome]:
    """Run labelled thunks concurrently, preserving submission order.

    Args:
        jobs: (label, zero-argument callable) pairs.
        max_workers: thread count; defaults to min(len(jobs), 4).
    """
    if not jobs:
        return []
    workers = max_workers if max_workers else min(len(jobs), 4)
    outcomes: list[Optional[JobOutcome]] = [None] * len(jobs)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn) for _, fn in jobs]
        for i, ((label, _), fut) in enumerate(zip(jobs, futures)):
            try:
                outcomes[i] = JobOutcome(label=label, value=fut.result())
            except BaseException as exc:
                outcomes[i] = JobOutcome(label=label, error=exc)
    return [o for o in outcomes if o is not None]
