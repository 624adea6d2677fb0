"""Directory-backed FIFO job queue with leases, retries and a failed bin.

Multiple worker processes (possibly on different machines sharing a
network filesystem) coordinate purely through atomic renames:

    <queue>/queued/   <ready_ns>__<job_id>.json
    <queue>/running/  <lease_expiry_ns>__<worker>__<job_id>.json
    <queue>/done/     <job_id>.json
    <queue>/failed/   <job_id>.json

Claiming renames the oldest ready entry into running/; the rename either
fully succeeds for exactly one claimant or fails, so a job can never be
claimed twice. A worker that dies mid-job simply stops renewing nothing:
once the lease expiry encoded in the filename passes, any other worker
requeues the entry. Failed jobs are retried with a linear backoff until
their attempt budget (max_retries + 1) is spent, then parked in failed/
with the error log attached.
"""

from __future__ import annotations

import json
import re
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .errors import InvalidTransitionError
from .persistence import atomic_write

STATES = ("queued", "running", "done", "failed")
DEFAULT_MAX_RETRIES = 3
DEFAULT_LEASE_SECONDS = 3600.0
DEFAULT_BACKOFF_SECONDS = 30.0

_SAFE = re.compile(r"[^A-Za-z0-9.-]")


@dataclass
class Job:
    job_id: str
    payload: dict
    state: str = "queued"
    attempts: int = 0
    max_retries: int = DEFAULT_MAX_RETRIES
    enqueued_at: float = 0.0
    started_at: Optional[float] = None
    finished_at: Optional[float] = None
    worker: Optional[str] = None
    error: Optional[str] = None
    running_name: str = field(default="", repr=False)  # internal handle

    def to_json(self) -> bytes:
        doc = {k: v for k, v in self.__dict__.items() if k != "running_name"}
        return (json.dumps(doc, sort_keys=True) + "\n").encode("utf-8")

    @classmethod
    def from_path(cls, path: Path) -> "Job":
        doc = json.loads(path.read_text(encoding="utf-8"))
        return cls(**doc)


def _dirs(queue_dir) -> dict[str, Path]:
    root = Path(queue_dir)
    return {state: root / state for state in STATES}


def ensure_queue(queue_dir) -> None:
    for path in _dirs(queue_dir).values():
        path.mkdir(parents=True, exist_ok=True)


def enqueue(queue_dir, payload: dict,
            max_retries: int = DEFAULT_MAX_RETRIES) -> str:
    """Add a job; FIFO position is the enqueue timestamp (then id)."""
    ensure_queue(queue_dir)
    job = Job(job_id=uuid.uuid4().hex, payload=payload,
              max_retries=max_retries, enqueued_at=time.time())
    name = f"{time.time_ns():020d}__{job.job_id}.json"
    atomic_write(_dirs(queue_dir)["queued"] / name, job.to_json())
    return job.job_id


def _requeue_expired(queue_dir) -> None:
    dirs = _dirs(queue_dir)
    now = time.time_ns()
    for path in list(dirs["running"].glob("*.json")):
        parts = path.name[:-5].split("__", 2)
        if len(parts) != 3:
            continue
        expiry_ns, _, job_id = parts
        if int(expiry_ns) > now:
            continue
        # stale lease; read first (harmless if we lose the race), then the
        # rename decides exactly one mover
        try:
            job = Job.from_path(path)
        except FileNotFoundError:
            continue
        exhausted = job.attempts > job.max_retries
        if exhausted:
            target = dirs["failed"] / f"{job_id}.json"
        else:
            target = dirs["queued"] / f"{now:020d}__{job_id}.json"
        try:
            path.rename(target)
        except FileNotFoundError:
            continue
        job.worker = None
        if exhausted:
            job.state = "failed"
            job.error = (job.error or "") + " [lease expired after final attempt]"
            job.finished_at = time.time()
        else:
            job.state = "queued"
        atomic_write(target, job.to_json())


def claim_next(queue_dir, worker_id: str,
               lease_seconds: float = DEFAULT_LEASE_SECONDS) -> Optional[Job]:
    """Atomically claim the oldest ready job, or None when empty.

    Retried jobs carry a not-before timestamp; entries that are not yet
    ready are skipped.
    """
    if not worker_id:
        raise ValueError("worker_id must be non-empty")
    ensure_queue(queue_dir)
    _requeue_expired(queue_dir)
    dirs = _dirs(queue_dir)
    worker = _SAFE.sub("-", worker_id)
    now = time.time_ns()
    for path in sorted(dirs["queued"].glob("*.json")):
        ready_ns = int(path.name.split("__", 1)[0])
        if ready_ns > now:
            continue
        expiry = time.time_ns() + int(lease_seconds * 1e9)
        target = dirs["running"] / f"{expiry:020d}__{worker}__{path.name.split('__', 1)[1]}"
        try:
            path.rename(target)
        except FileNotFoundError:
            continue  # someone else won; try the next entry
        job = Job.from_path(target)
        job.state = "running"
        job.attempts += 1
        job.started_at = time.time()
        job.worker = worker_id
        job.running_name = target.name
        atomic_write(target, job.to_json())
        return job
    return None


def complete(queue_dir, job: Job, outcome: str, error: Optional[str] = None,
             backoff_seconds: float = DEFAULT_BACKOFF_SECONDS) -> str:
    """Report a claimed job as "success" or "failure"; returns the new state.

    Failures are requeued with backoff while attempts remain, otherwise
    parked in failed/. Raises InvalidTransition when the job is no longer
    running under this claim (double completion or expired lease).
    """
    if outcome not in ("success", "failure"):
        raise ValueError("outcome must be 'success' or 'failure'")
    if not job.running_name:
        raise InvalidTransitionError(f"job {job.job_id} was never claimed")
    dirs = _dirs(queue_dir)
    running = dirs["running"] / job.running_name

    if outcome == "success":
        job.state = "done"
        job.finished_at = time.time()
        target = dirs["done"] / f"{job.job_id}.json"
    else:
        job.error = error or "failure"
        if job.attempts <= job.max_retries:
            job.state = "queued"
            ready = time.time_ns() + int(backoff_seconds * job.attempts * 1e9)
            target = dirs["queued"] / f"{ready:020d}__{job.job_id}.json"
        else:
            job.state = "failed"
            job.finished_at = time.time()
            target = dirs["failed"] / f"{job.job_id}.json"

    # the rename is the commit: it fails if the lease already expired and
    # someone else moved the job, so completion happens at most once
    try:
        running.rename(target)
    except FileNotFoundError:
        raise InvalidTransitionError(
            f"job {job.job_id} is not running under this claim") from None
    atomic_write(target, job.to_json())
    return job.state


def counts(queue_dir) -> dict[str, int]:
    ensure_queue(queue_dir)
    return {state: len(list(path.glob("*.json")))
            for state, path in _dirs(queue_dir).items()}


def jobs_in(queue_dir, state: str) -> list[Job]:
    path = _dirs(queue_dir)[state]
    return [Job.from_path(p) for p in sorted(path.glob("*.json"))]


def run_worker(queue_dir, worker_id: str, handler: Callable[[dict], None],
               lease_seconds: float = DEFAULT_LEASE_SECONDS,
               backoff_seconds: float = DEFAULT_BACKOFF_SECONDS,
               drain: bool = False, poll_seconds: float = 1.0,
               max_jobs: Optional[int] = None) -> int:
    """Claim-and-execute loop. Returns the number of jobs processed.

    With drain=True the worker exits once no claimable work remains;
    otherwise it polls forever (until max_jobs).
    """
    processed = 0
    while max_jobs is None or processed < max_jobs:
        job = claim_next(queue_dir, worker_id, lease_seconds)
        if job is None:
            if drain and not _pending_work(queue_dir):
                break
            if drain or poll_seconds <= 0:
                time.sleep(min(poll_seconds, 0.05) if poll_seconds > 0 else 0.01)
                continue
            time.sleep(poll_seconds)
            continue
        try:
            handler(job.payload)
        except Exception as exc:  # job failure, not worker failure
            complete(queue_dir, job, "failure", error=repr(exc),
                     backoff_seconds=backoff_seconds)
        else:
            complete(queue_dir, job, "success")
        processed += 1
    return processed


def _pending_work(queue_dir) -> bool:
    state = counts(queue_dir)
    return state["queued"] > 0 or state["running"] > 0
