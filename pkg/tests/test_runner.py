"""Test the bounded job runner."""

import threading
import time

import pytest

from src.cli.runner import JobResult, JobRunner, JobStatus


class ConcurrencyMeter:
    """Records how many jobs run at the same time."""

    def __init__(self):
        self.lock = threading.Lock()
        self.active = 0
        self.peak = 0

    def job(self, value, delay: float = 0.02):
        def run():
            with self.lock:
                self.active += 1
                self.peak = max(self.peak, self.active)
            time.sleep(delay)
            with self.lock:
                self.active -= 1
            return value

        return run


class TestJobRunner:
    """Test ordering, failure capture and the worker bound."""

    @pytest.mark.asyncio
    async def test_results_keep_submission_order(self):
        """Test that later-finishing jobs still come back in submission order."""
        meter = ConcurrencyMeter()
        jobs = [(f"job-{i}", meter.job(i, delay=0.05 - 0.01 * i)) for i in range(4)]
        results = await JobRunner(workers=4).execute_parallel(jobs)
        assert [r.job_id for r in results] == ["job-0", "job-1", "job-2", "job-3"]
        assert [r.value for r in results] == [0, 1, 2, 3]
        assert all(r.is_success for r in results)

    @pytest.mark.asyncio
    async def test_failures_are_captured(self):
        def boom():
            raise ValueError("bad seed")

        results = await JobRunner(workers=2).execute_parallel([("a:0", boom), ("a:1", lambda: 5)])
        assert results[0].status == JobStatus.FAILED
        assert isinstance(results[0].error, ValueError)
        assert results[1].value == 5
        assert results[0].to_dict()["error"] == "bad seed"

    def test_worker_bound(self):
        meter = ConcurrencyMeter()
        JobRunner(workers=2).run([(str(i), meter.job(i)) for i in range(8)])
        assert 1 <= meter.peak <= 2

    def test_single_worker_is_sequential(self):
        meter = ConcurrencyMeter()
        results = JobRunner(workers=1).run([(str(i), meter.job(i)) for i in range(3)])
        assert meter.peak == 1
        assert [r.value for r in results] == [0, 1, 2]

    def test_workers_at_least_one(self):
        assert JobRunner(workers=0).workers == 1

    def test_empty(self):
        assert JobRunner().run([]) == []


class TestJobResult:
    def test_to_dict(self):
        result = JobResult(job_id="x", status=JobStatus.SUCCESS, value=1, execution_time=0.5)
        assert result.to_dict() == {
            "job_id": "x",
            "status": "success",
            "error": None,
            "execution_time": 0.5,
        }
