"""Bounded job pool for experiment seeds and grid cells.

Example:
    runner = JobRunner(workers=4)
    results = runner.run([("seed-0", train_seed_0), ("seed-1", train_seed_1)])
    for result in results:
        if not result.is_success:
            raise result.error
"""

import asyncio
import logging
import time
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Any

logger = logging.getLogger(__name__)


class JobStatus(str, Enum):
    """Job execution status."""

    SUCCESS = "success"
    FAILED = "failed"


@dataclass
class JobResult:
    """Outcome of one job."""

    job_id: str
    status: JobStatus
    value: Any = None
    error: BaseException | None = None
    execution_time: float = 0.0  # seconds

    @property
    def is_success(self) -> bool:
        return self.status == JobStatus.SUCCESS

    def to_dict(self) -> dict[str, Any]:
        return {
            "job_id": self.job_id,
            "status": self.status.value,
            "error": str(self.error) if self.error is not None else None,
            "execution_time": self.execution_time,
        }


class JobRunner:
    """Runs independent jobs on at most ``workers`` threads.

    Every job owns its state; results come back in submission order whatever the
    completion order.
    """

    def __init__(self, workers: int = 1):
        """Initialize the runner.

        Args:
            workers: Maximum number of jobs running at once (at least 1).
        """
        self.workers = max(1, int(workers))

    async def _execute(
        self, semaphore: asyncio.Semaphore, job_id: str, fn: Callable[[], Any]
    ) -> JobResult:
        async with semaphore:
            start_time = time.time()
            try:
                value = await asyncio.to_thread(fn)
            except Exception as e:
                logger.warning(f"Job {job_id} failed: {e}")
                return JobResult(
                    job_id=job_id,
                    status=JobStatus.FAILED,
                    error=e,
                    execution_time=time.time() - start_time,
                )
            logger.debug(f"Job {job_id} finished in {time.time() - start_time:.2f}s")
            return JobResult(
                job_id=job_id,
                status=JobStatus.SUCCESS,
                value=value,
                execution_time=time.time() - start_time,
            )

    async def execute_parallel(self, jobs: list[tuple[str, Callable[[], Any]]]) -> list[JobResult]:
        """Execute jobs concurrently.

        Args:
            jobs: ``(job_id, zero-argument callable)`` pairs.

        Returns:
            One JobResult per job, in the same order as ``jobs``.
        """
        semaphore = asyncio.Semaphore(self.workers)
        tasks = [self._execute(semaphore, job_id, fn) for job_id, fn in jobs]
        return list(await asyncio.gather(*tasks))

    def run(self, jobs: list[tuple[str, Callable[[], Any]]]) -> list[JobResult]:
        """Synchronous wrapper around ``execute_parallel``."""
        return asyncio.run(self.execute_parallel(jobs))
