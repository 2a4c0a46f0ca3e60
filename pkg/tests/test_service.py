import json
import random

import pytest

from splitrephrase.datasets import Benchmark, ComplexSimplePair, Rewrite
from splitrephrase.ratings import parse_ratings_jsonl, aggregate_ratings
from splitrephrase.service import RATE, REWRITE, ServiceError, TaskStore, create_app


def make_benchmark(n_pairs=3, with_rewrites=False):
    pairs = []
    for i in range(n_pairs):
        rewrites = ()
        if with_rewrites:
            rewrites = (
                Rewrite(f"p{i}-m0", "model:rule", (f"Model out {i} a .", f"And b {i} .")),
            )
        pairs.append(
            ComplexSimplePair(f"p{i}", f"Complex sentence number {i} .", rewrites)
        )
    return Benchmark(name="test", pairs=tuple(pairs))


def good_rating(**over):
    payload = {
        "sensical": 5,
        "grammatical": 5,
        "miss_fact": False,
        "new_fact": False,
        "wrong_split": False,
        "need_more_split": False,
    }
    payload.update(over)
    return payload


def test_register_and_fresh_pool_assigns():
    store = TaskStore(make_benchmark())
    store.register_worker("w1")
    task = store.next_task("w1", REWRITE)
    assert task is not None
    assert task.kind == REWRITE
    assert task.assigned_to == "w1"
    assert task.original_text.startswith("Complex sentence")


def test_unknown_worker_rejected():
    store = TaskStore(make_benchmark())
    with pytest.raises(ServiceError, match="unknown worker"):
        store.next_task("ghost", REWRITE)


def test_no_duplicate_assignment_to_same_worker():
    store = TaskStore(make_benchmark(n_pairs=2))
    store.register_worker("w1")
    seen = set()
    while (task := store.next_task("w1", REWRITE)) is not None:
        assert task.pair_id not in seen
        seen.add(task.pair_id)
    assert seen == {"p0", "p1"}


def test_rewrite_submission_rules():
    store = TaskStore(make_benchmark(n_pairs=1))
    store.register_worker("w1")
    task = store.next_task("w1", REWRITE)
    # single sentence without flag -> rejected
    with pytest.raises(ServiceError, match="two sentences"):
        store.submit(task.task_id, "w1", {"sentences": ["Only one ."], "flag": "none"})
    # flagged single sentence is fine
    ack = store.submit(
        task.task_id, "w1", {"sentences": ["Too simple ."], "flag": "too_simple"}
    )
    assert ack["status"] == "accepted"


def test_rating_payload_validation_and_double_submission():
    store = TaskStore(make_benchmark(n_pairs=1, with_rewrites=True))
    store.register_worker("w1")
    task = store.next_task("w1", RATE)
    assert task.rewritten_text
    with pytest.raises(ServiceError, match="sensical"):
        store.submit(task.task_id, "w1", good_rating(sensical=6))
    with pytest.raises(ServiceError, match="boolean"):
        store.submit(task.task_id, "w1", good_rating(miss_fact="no"))
    ack = store.submit(task.task_id, "w1", good_rating())
    assert ack["status"] == "accepted"
    with pytest.raises(ServiceError, match="already"):
        store.submit(task.task_id, "w1", good_rating())


def test_self_rating_exclusion():
    store = TaskStore(make_benchmark(n_pairs=1), ratings_per_rewrite=3)
    store.register_worker("author")
    store.register_worker("rater")
    task = store.next_task("author", REWRITE)
    store.submit(
        task.task_id, "author", {"sentences": ["First half .", "Second half ."],
                                 "flag": "none"}
    )
    # the author never sees their own rewrite
    assert store.next_task("author", RATE) is None
    other = store.next_task("rater", RATE)
    assert other is not None
    assert other.rewrite_id == "p0::author"


def test_quota_exhaustion_counts_distinct_workers():
    store = TaskStore(make_benchmark(n_pairs=1, with_rewrites=True),
                      ratings_per_rewrite=2)
    for w in ("a", "b", "c"):
        store.register_worker(w)
    t1 = store.next_task("a", RATE)
    store.submit(t1.task_id, "a", good_rating())
    t2 = store.next_task("b", RATE)
    store.submit(t2.task_id, "b", good_rating())
    assert store.next_task("c", RATE) is None


def test_pending_assignments_reserve_quota_slots():
    store = TaskStore(make_benchmark(n_pairs=1, with_rewrites=True),
                      ratings_per_rewrite=2)
    for w in ("a", "b", "c"):
        store.register_worker(w)
    assert store.next_task("a", RATE) is not None
    assert store.next_task("b", RATE) is not None
    # two outstanding assignments fill the quota of 2
    assert store.next_task("c", RATE) is None


def test_export_ratings_roundtrip():
    store = TaskStore(make_benchmark(n_pairs=2, with_rewrites=True),
                      ratings_per_rewrite=2)
    for w in ("a", "b"):
        store.register_worker(w)
    submitted = 0
    for w in ("a", "b"):
        while (task := store.next_task(w, RATE)) is not None:
            store.submit(task.task_id, w, good_rating(grammatical=4 + (submitted % 2)))
            submitted += 1
    text = store.export_ratings()
    records = parse_ratings_jsonl(text)
    assert len(records) == submitted
    # export -> parse -> aggregate equals aggregation over live state
    live = aggregate_ratings(records)
    assert live.n == submitted


def test_export_rewrites_skips_flagged():
    store = TaskStore(make_benchmark(n_pairs=2))
    store.register_worker("w")
    t1 = store.next_task("w", REWRITE)
    store.submit(t1.task_id, "w", {"sentences": ["Good one .", "Good two ."],
                                   "flag": "none"})
    t2 = store.next_task("w", REWRITE)
    store.submit(t2.task_id, "w", {"sentences": ["Meh ."], "flag": "problematic"})
    lines = [json.loads(l) for l in store.export_rewrites().splitlines()]
    assert len(lines) == 1
    assert lines[0]["rewrites"][0]["sentences"] == ["Good one .", "Good two ."]


def test_empty_log_empty_export():
    store = TaskStore(make_benchmark())
    assert store.export_ratings() == ""
    assert store.export_rewrites() == ""


def test_event_log_replay_reconstructs_state(tmp_path):
    log = tmp_path / "events.jsonl"
    store = TaskStore(make_benchmark(n_pairs=2, with_rewrites=True), log_path=log)
    for w in ("a", "b"):
        store.register_worker(w)
    t = store.next_task("a", REWRITE)
    store.submit(t.task_id, "a", {"sentences": ["X one .", "X two ."], "flag": "none"})
    t = store.next_task("b", RATE)
    store.submit(t.task_id, "b", good_rating())

    replayed = TaskStore(make_benchmark(n_pairs=2, with_rewrites=True), log_path=log)
    assert replayed.state_snapshot() == store.state_snapshot()
    assert replayed.export_ratings() == store.export_ratings()
    assert replayed.export_rewrites() == store.export_rewrites()


def test_progress_counts():
    store = TaskStore(make_benchmark(n_pairs=2, with_rewrites=True))
    store.register_worker("w")
    progress = store.progress()
    assert progress["pairs"] == 2
    assert progress["rewrite"]["collected"] == 0
    assert progress["rate"]["collected"] == 0


# --- randomized multi-worker session -------------------------------------------


def run_random_session(tmp_path, seed=0, operations=250):
    rng = random.Random(seed)
    log = tmp_path / f"session-{seed}.jsonl"
    benchmark = make_benchmark(n_pairs=6, with_rewrites=True)
    store = TaskStore(log_path=log, benchmark=benchmark,
                      rewrites_per_pair=3, ratings_per_rewrite=2)
    workers = [f"w{i}" for i in range(5)]
    for w in workers:
        store.register_worker(w)

    open_tasks = []  # (task, worker)
    submitted_ratings = []  # (rewrite_id, worker)
    ops = 0
    while ops < operations:
        ops += 1
        action = rng.random()
        worker = rng.choice(workers)
        if action < 0.45 or not open_tasks:
            kind = REWRITE if rng.random() < 0.5 else RATE
            task = store.next_task(worker, kind)
            if task is not None:
                open_tasks.append((task, worker))
        elif action < 0.85:
            task, owner = open_tasks.pop(rng.randrange(len(open_tasks)))
            if task.kind == REWRITE:
                if rng.random() < 0.2:
                    payload = {"sentences": ["Too odd ."], "flag": "problematic"}
                else:
                    payload = {
                        "sentences": [f"Part one {rng.randint(0, 9)} .", "Part two ."],
                        "flag": "none",
                    }
            else:
                payload = good_rating(
                    sensical=rng.randint(0, 5),
                    grammatical=rng.randint(0, 5),
                    miss_fact=rng.random() < 0.2,
                )
            store.submit(task.task_id, owner, payload)
            if task.kind == RATE:
                submitted_ratings.append((task.rewrite_id, owner))
        else:
            # hostile operations must bounce without corrupting state
            kind = rng.choice(["double", "foreign", "range", "ghost-task"])
            with pytest.raises(ServiceError):
                if kind == "double" and submitted_ratings:
                    rid, owner = submitted_ratings[-1]
                    # find the fulfilled task id for that rating
                    tid = next(
                        tid
                        for (k, t, w), tid in store._assignments.items()
                        if k == RATE and t == rid and w == owner
                    )
                    store.submit(tid, owner, good_rating())
                elif kind == "foreign" and open_tasks:
                    task, owner = open_tasks[-1]
                    thief = next(w for w in workers if w != owner)
                    store.submit(task.task_id, thief, good_rating())
                elif kind == "range" and open_tasks and open_tasks[-1][0].kind == RATE:
                    task, owner = open_tasks[-1]
                    store.submit(task.task_id, owner, good_rating(sensical=7))
                else:
                    store.submit("task-999999", worker, good_rating())
    return store, log, benchmark


def test_randomized_session_invariants(tmp_path):
    store, log, benchmark = run_random_session(tmp_path, seed=2024, operations=260)

    snapshot = store.state_snapshot()
    # no rewrite rated twice by one worker, nobody rates their own rewrite
    for rid, records in snapshot["ratings"].items():
        raters = [r["rater_id"] for r in records]
        assert len(raters) == len(set(raters)), f"duplicate rater on {rid}"
        author = snapshot["rewrites"].get(rid, {}).get("author_worker", "")
        assert author not in raters
        assert len(records) <= store.ratings_per_rewrite
    # rewrite quotas respected
    per_pair = {}
    for rid, entry in snapshot["rewrites"].items():
        if entry["author_worker"]:
            per_pair[entry["pair_id"]] = per_pair.get(entry["pair_id"], 0) + 1
    for pair_id, count in per_pair.items():
        assert count <= store.rewrites_per_pair

    # replaying the log from scratch reproduces the exact state
    replayed = TaskStore(log_path=log, benchmark=benchmark,
                         rewrites_per_pair=3, ratings_per_rewrite=2)
    assert replayed.state_snapshot() == snapshot


# --- HTTP surface -----------------------------------------------------------------


@pytest.fixture()
def client():
    from fastapi.testclient import TestClient

    store = TaskStore(make_benchmark(n_pairs=2, with_rewrites=True))
    return TestClient(create_app(store))


def test_http_workflow(client):
    assert client.post("/api/workers", json={"worker_id": "w1"}).status_code == 200
    r = client.get("/api/tasks/next", params={"worker_id": "w1", "kind": "rate"})
    assert r.status_code == 200
    task = r.json()["task"]
    assert task["kind"] == "rate"
    r = client.post(
        "/api/submissions",
        json={"task_id": task["task_id"], "worker_id": "w1", "payload": good_rating()},
    )
    assert r.status_code == 200
    # double submission bounces with a reason
    r = client.post(
        "/api/submissions",
        json={"task_id": task["task_id"], "worker_id": "w1", "payload": good_rating()},
    )
    assert r.status_code == 400
    assert "already" in r.json()["detail"]
    progress = client.get("/api/progress").json()
    assert progress["rate"]["collected"] == 1
    export = client.get("/api/export", params={"kind": "ratings"})
    assert export.status_code == 200
    assert len(export.text.strip().splitlines()) == 1


def test_http_unknown_worker_and_kind(client):
    r = client.get("/api/tasks/next", params={"worker_id": "nope", "kind": "rate"})
    assert r.status_code == 400
    client.post("/api/workers", json={"worker_id": "w"})
    r = client.get("/api/tasks/next", params={"worker_id": "w", "kind": "weird"})
    assert r.status_code == 400
    r = client.get("/api/export", params={"kind": "weird"})
    assert r.status_code == 400


def test_http_exhausted_pool(client):
    client.post("/api/workers", json={"worker_id": "only"})
    seen = 0
    while True:
        r = client.get(
            "/api/tasks/next", params={"worker_id": "only", "kind": "rewrite"}
        )
        if r.json()["task"] is None:
            assert r.json()["status"] == "exhausted"
            break
        seen += 1
    assert seen == 2  # one per pair for a single worker
