"""Local two-phase task service: rewrite collection and rating collection.

State is an append-only JSONL event log (worker registrations, task
assignments, accepted submissions); replaying the log from empty rebuilds the
exact server state, which is also how the server starts up. Quotas count
accepted submissions plus outstanding assignments, so a rewrite can never end
up with more ratings than configured, workers never see the same task twice,
and nobody rates their own rewrite.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Optional

from .datasets import Benchmark, ComplexSimplePair, Rewrite, benchmark_to_jsonl
from .ratings import (
    BOOL_CRITERIA,
    RatingRecord,
    SCALE_CRITERIA,
    ratings_to_jsonl,
)

REWRITE = "rewrite"
RATE = "rate"
FLAGS = ("none", "too_simple", "problematic")


class ServiceError(ValueError):
    """Submission or request rejected; the log is unchanged."""


@dataclass(frozen=True)
class Task:
    task_id: str
    kind: str
    pair_id: str
    original_text: str
    assigned_to: str
    rewrite_id: str = ""
    rewritten_text: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class _RewriteEntry:
    rewrite_id: str
    pair_id: str
    author_worker: str  # empty for preloaded rewrites
    sentences: tuple[str, ...]
    flag: str = "none"
    author: str = "human"


class TaskStore:
    """In-memory state over an append-only event log."""

    def __init__(
        self,
        benchmark: Benchmark,
        log_path: Optional[str | Path] = None,
        rewrites_per_pair: int = 3,
        ratings_per_rewrite: int = 2,
    ):
        if rewrites_per_pair < 1 or ratings_per_rewrite < 1:
            raise ValueError("quotas must be >= 1")
        self.benchmark = benchmark
        self.rewrites_per_pair = rewrites_per_pair
        self.ratings_per_rewrite = ratings_per_rewrite
        self._log_path = Path(log_path) if log_path is not None else None
        self._lock = threading.Lock()

        self._workers: set[str] = set()
        self._tasks: dict[str, Task] = {}
        self._fulfilled: set[str] = set()  # task_ids with an accepted submission
        # (kind, target_id, worker) -> task_id, one assignment per worker+target
        self._assignments: dict[tuple[str, str, str], str] = {}
        self._rewrites: dict[str, _RewriteEntry] = {}
        self._rewrite_order: list[str] = []
        self._ratings: dict[str, list[RatingRecord]] = {}
        self._pairs: dict[str, ComplexSimplePair] = {
            p.pair_id: p for p in benchmark.pairs
        }

        for pair in benchmark.pairs:
            for rw in pair.rewrites:
                entry = _RewriteEntry(
                    rewrite_id=rw.rewrite_id,
                    pair_id=pair.pair_id,
                    author_worker="",
                    sentences=rw.sentences,
                    author=rw.author,
                )
                self._rewrites[rw.rewrite_id] = entry
                self._rewrite_order.append(rw.rewrite_id)

        if self._log_path is not None and self._log_path.exists():
            with open(self._log_path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        self._apply(json.loads(line))

    # --- event plumbing ---------------------------------------------------

    def _append(self, event: dict) -> None:
        if self._log_path is not None:
            with open(self._log_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event, ensure_ascii=False) + "\n")
        self._apply(event)

    def _apply(self, event: dict) -> None:
        kind = event["type"]
        if kind == "worker":
            self._workers.add(event["worker_id"])
        elif kind == "assign":
            task = Task(**event["task"])
            self._tasks[task.task_id] = task
            target = task.rewrite_id if task.kind == RATE else task.pair_id
            self._assignments[(task.kind, target, task.assigned_to)] = task.task_id
        elif kind == "submit":
            task = self._tasks[event["task_id"]]
            self._fulfilled.add(task.task_id)
            payload = event["payload"]
            if task.kind == REWRITE:
                entry = _RewriteEntry(
                    rewrite_id=event["rewrite_id"],
                    pair_id=task.pair_id,
                    author_worker=task.assigned_to,
                    sentences=tuple(payload["sentences"]),
                    flag=payload.get("flag", "none"),
                )
                self._rewrites[entry.rewrite_id] = entry
                self._rewrite_order.append(entry.rewrite_id)
            else:
                record = RatingRecord(
                    rewrite_id=task.rewrite_id,
                    rater_id=task.assigned_to,
                    sensical=payload["sensical"],
                    grammatical=payload["grammatical"],
                    miss_fact=payload["miss_fact"],
                    new_fact=payload["new_fact"],
                    wrong_split=payload["wrong_split"],
                    need_more_split=payload["need_more_split"],
                )
                self._ratings.setdefault(task.rewrite_id, []).append(record)
        else:
            raise ValueError(f"unknown event type {kind!r}")

    # --- coverage helpers ----------------------------------------------------

    def _pending(self, kind: str, target: str) -> int:
        n = 0
        for (k, t, _), task_id in self._assignments.items():
            if k == kind and t == target and task_id not in self._fulfilled:
                n += 1
        return n

    def _rewrite_submissions(self, pair_id: str) -> int:
        return sum(
            1
            for rid in self._rewrite_order
            if self._rewrites[rid].pair_id == pair_id
            and self._rewrites[rid].author_worker
        )

    def _coverage(self, kind: str, target: str) -> int:
        if kind == REWRITE:
            done = self._rewrite_submissions(target)
        else:
            done = len(self._ratings.get(target, []))
        return done + self._pending(kind, target)

    # --- API operations ----------------------------------------------------------

    def register_worker(self, worker_id: str) -> None:
        if not worker_id or not worker_id.strip():
            raise ServiceError("worker_id must be non-empty")
        with self._lock:
            if worker_id not in self._workers:
                self._append({"type": "worker", "worker_id": worker_id})

    def next_task(self, worker_id: str, kind: str) -> Optional[Task]:
        with self._lock:
            if worker_id not in self._workers:
                raise ServiceError(f"unknown worker {worker_id!r}")
            if kind not in (REWRITE, RATE):
                raise ServiceError(f"unknown task kind {kind!r}")

            if kind == REWRITE:
                candidates = [
                    (self._coverage(REWRITE, pid), pid)
                    for pid in sorted(self._pairs)
                    if self._coverage(REWRITE, pid) < self.rewrites_per_pair
                    and (REWRITE, pid, worker_id) not in self._assignments
                ]
                if not candidates:
                    return None
                _, pair_id = min(candidates)
                task = Task(
                    task_id=f"task-{len(self._tasks) + 1:06d}",
                    kind=REWRITE,
                    pair_id=pair_id,
                    original_text=self._pairs[pair_id].complex_text,
                    assigned_to=worker_id,
                )
            else:
                candidates = []
                for rid in sorted(self._rewrite_order):
                    entry = self._rewrites[rid]
                    if entry.flag != "none":
                        continue
                    if entry.author_worker == worker_id:
                        continue
                    if (RATE, rid, worker_id) in self._assignments:
                        continue
                    cov = self._coverage(RATE, rid)
                    if cov < self.ratings_per_rewrite:
                        candidates.append((cov, rid))
                if not candidates:
                    return None
                _, rewrite_id = min(candidates)
                entry = self._rewrites[rewrite_id]
                task = Task(
                    task_id=f"task-{len(self._tasks) + 1:06d}",
                    kind=RATE,
                    pair_id=entry.pair_id,
                    original_text=self._pairs[entry.pair_id].complex_text,
                    assigned_to=worker_id,
                    rewrite_id=rewrite_id,
                    rewritten_text=" ".join(entry.sentences),
                )
            self._append({"type": "assign", "task": task.to_dict()})
            return task

    def submit(self, task_id: str, worker_id: str, payload: dict) -> dict:
        with self._lock:
            task = self._tasks.get(task_id)
            if task is None:
                raise ServiceError(f"unknown task {task_id!r}")
            if task.assigned_to != worker_id:
                raise ServiceError("task is not assigned to this worker")
            if task_id in self._fulfilled:
                raise ServiceError("task already submitted")

            event = {
                "type": "submit",
                "task_id": task_id,
                "worker_id": worker_id,
                "payload": self._validate_payload(task, payload),
                "submitted_at": time.time(),
            }
            if task.kind == REWRITE:
                event["rewrite_id"] = f"{task.pair_id}::{worker_id}"
            self._append(event)
            return {"status": "accepted", "task_id": task_id}

    def _validate_payload(self, task: Task, payload: dict) -> dict:
        if not isinstance(payload, dict):
            raise ServiceError("payload must be an object")
        if task.kind == REWRITE:
            sentences = payload.get("sentences")
            flag = payload.get("flag", "none")
            if flag not in FLAGS:
                raise ServiceError(f"unknown flag {flag!r}")
            if not isinstance(sentences, list) or not all(
                isinstance(s, str) and s.strip() for s in sentences
            ):
                raise ServiceError("sentences must be a list of non-empty strings")
            if flag == "none" and len(sentences) < 2:
                raise ServiceError("a rewrite must contain at least two sentences")
            return {"sentences": sentences, "flag": flag}
        clean: dict = {}
        for name in SCALE_CRITERIA:
            value = payload.get(name)
            if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 5:
                raise ServiceError(f"{name} must be an integer in 0..5")
            clean[name] = value
        for name in BOOL_CRITERIA:
            value = payload.get(name)
            if not isinstance(value, bool):
                raise ServiceError(f"{name} must be a boolean")
            clean[name] = value
        return clean

    # --- views -----------------------------------------------------------------

    def progress(self) -> dict:
        with self._lock:
            rewrite_targets = len(self._pairs)
            rate_targets = sum(
                1 for e in self._rewrites.values() if e.flag == "none"
            )
            return {
                "workers": len(self._workers),
                "pairs": rewrite_targets,
                "rewrite": {
                    "quota": self.rewrites_per_pair,
                    "collected": sum(
                        self._rewrite_submissions(pid) for pid in self._pairs
                    ),
                    "target": rewrite_targets * self.rewrites_per_pair,
                },
                "rate": {
                    "quota": self.ratings_per_rewrite,
                    "collected": sum(len(v) for v in self._ratings.values()),
                    "target": rate_targets * self.ratings_per_rewrite,
                },
            }

    def export_ratings(self) -> str:
        with self._lock:
            records = [
                r
                for rid in self._rewrite_order
                for r in self._ratings.get(rid, [])
            ]
            return ratings_to_jsonl(records)

    def export_rewrites(self) -> str:
        """Collected (non-flagged) rewrites as canonical benchmark JSONL."""
        with self._lock:
            by_pair: dict[str, list[Rewrite]] = {}
            for rid in self._rewrite_order:
                entry = self._rewrites[rid]
                if not entry.author_worker or entry.flag != "none":
                    continue
                by_pair.setdefault(entry.pair_id, []).append(
                    Rewrite(entry.rewrite_id, "human", entry.sentences)
                )
            pairs = [
                ComplexSimplePair(pid, self._pairs[pid].complex_text, tuple(rws))
                for pid, rws in by_pair.items()
            ]
            if not pairs:
                return ""
            return benchmark_to_jsonl(
                Benchmark(name="collected", pairs=tuple(pairs))
            )

    def state_snapshot(self) -> dict:
        """Deterministic view of the full state, for replay comparisons."""
        with self._lock:
            return {
                "workers": sorted(self._workers),
                "tasks": {tid: t.to_dict() for tid, t in sorted(self._tasks.items())},
                "fulfilled": sorted(self._fulfilled),
                "rewrites": {
                    rid: asdict(self._rewrites[rid]) for rid in self._rewrite_order
                },
                "ratings": {
                    rid: [r.__dict__ for r in records]
                    for rid, records in sorted(self._ratings.items())
                },
            }


def create_app(store: TaskStore, static_dir: Optional[str | Path] = None):
    """FastAPI app exposing the task workflow plus optional static UI hosting."""
    from fastapi import FastAPI, HTTPException
    from fastapi.responses import PlainTextResponse

    app = FastAPI(title="splitrephrase rating service")

    @app.post("/api/workers")
    def register_worker(body: dict):
        worker_id = body.get("worker_id", "")
        try:
            store.register_worker(worker_id)
        except ServiceError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"status": "registered", "worker_id": worker_id}

    @app.get("/api/tasks/next")
    def next_task(worker_id: str, kind: str):
        try:
            task = store.next_task(worker_id, kind)
        except ServiceError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if task is None:
            return {"task": None, "status": "exhausted"}
        return {"task": task.to_dict(), "status": "assigned"}

    @app.post("/api/submissions")
    def submit(body: dict):
        try:
            return store.submit(
                task_id=body.get("task_id", ""),
                worker_id=body.get("worker_id", ""),
                payload=body.get("payload", {}),
            )
        except ServiceError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/api/progress")
    def progress():
        return store.progress()

    @app.get("/api/export", response_class=PlainTextResponse)
    def export(kind: str):
        if kind == "ratings":
            return store.export_ratings()
        if kind == "rewrites":
            return store.export_rewrites()
        raise HTTPException(status_code=400, detail=f"unknown export kind {kind!r}")

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
