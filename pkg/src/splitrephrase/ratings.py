"""Six-criteria human ratings: records, correctness gates, and aggregation.

A rating answers two 0-5 scales (sensical, grammatical) and four defect
questions (missing facts, new facts, wrong splits, missing splits). A rating
is *correct* when both scales are 5 and all four defects are answered "no";
a rewrite is *perfect* when every one of its ratings is correct.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from typing import Iterable, Sequence

BOOL_CRITERIA = ("miss_fact", "new_fact", "wrong_split", "need_more_split")
SCALE_CRITERIA = ("sensical", "grammatical")


@dataclass(frozen=True)
class RatingRecord:
    """One rater's answers for one rewrite."""

    rewrite_id: str
    rater_id: str
    sensical: int
    grammatical: int
    miss_fact: bool
    new_fact: bool
    wrong_split: bool
    need_more_split: bool

    def __post_init__(self):
        for name in SCALE_CRITERIA:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 5:
                raise ValueError(f"{name} must be an integer in 0..5, got {value!r}")
        for name in BOOL_CRITERIA:
            if not isinstance(getattr(self, name), bool):
                raise ValueError(f"{name} must be a boolean")


def is_correct(record: RatingRecord) -> bool:
    """Top marks on both scales and "no" on all four defect questions."""
    return (
        record.sensical == 5
        and record.grammatical == 5
        and not record.miss_fact
        and not record.new_fact
        and not record.wrong_split
        and not record.need_more_split
    )


def is_perfect(records: Sequence[RatingRecord]) -> bool:
    """All ratings of one rewrite are correct; an unrated rewrite is not perfect."""
    records = list(records)
    if not records:
        return False
    ids = {r.rewrite_id for r in records}
    if len(ids) != 1:
        raise ValueError(f"records span multiple rewrites: {sorted(ids)}")
    return all(is_correct(r) for r in records)


@dataclass(frozen=True)
class CriteriaSummary:
    """Aggregate view of ratings: percent-top/mean for scales, percent-good for defects."""

    sensical_percent_top: float
    sensical_mean: float
    grammatical_percent_top: float
    grammatical_mean: float
    miss_fact_percent_good: float
    new_fact_percent_good: float
    wrong_split_percent_good: float
    need_more_split_percent_good: float
    correct_rate: float
    n: int


def aggregate_ratings(records: Sequence[RatingRecord]) -> CriteriaSummary:
    records = list(records)
    if not records:
        raise ValueError("cannot aggregate an empty rating list")
    n = len(records)

    def pct(flags: Iterable[bool]) -> float:
        return 100.0 * sum(flags) / n

    return CriteriaSummary(
        sensical_percent_top=pct(r.sensical == 5 for r in records),
        sensical_mean=sum(r.sensical for r in records) / n,
        grammatical_percent_top=pct(r.grammatical == 5 for r in records),
        grammatical_mean=sum(r.grammatical for r in records) / n,
        miss_fact_percent_good=pct(not r.miss_fact for r in records),
        new_fact_percent_good=pct(not r.new_fact for r in records),
        wrong_split_percent_good=pct(not r.wrong_split for r in records),
        need_more_split_percent_good=pct(not r.need_more_split for r in records),
        correct_rate=pct(is_correct(r) for r in records),
        n=n,
    )


# --- table formatting --------------------------------------------------------

SUMMARY_COLUMNS = (
    "sensical",
    "grammatical",
    "no miss fact",
    "no new fact",
    "correct split",
    "enough split",
    "correct",
)


def summary_cells(summary: CriteriaSummary) -> list[str]:
    """Render one summary as table cells: `XX.X%/Y.YY` scales, `XX.XX%` defects."""
    return [
        f"{summary.sensical_percent_top:.1f}%/{summary.sensical_mean:.2f}",
        f"{summary.grammatical_percent_top:.1f}%/{summary.grammatical_mean:.2f}",
        f"{summary.miss_fact_percent_good:.2f}%",
        f"{summary.new_fact_percent_good:.2f}%",
        f"{summary.wrong_split_percent_good:.2f}%",
        f"{summary.need_more_split_percent_good:.2f}%",
        f"{summary.correct_rate:.1f}%",
    ]


def render_summary_table(rows: Sequence[tuple[str, CriteriaSummary]], extra: dict | None = None) -> str:
    """Aligned text table, one row per (label, summary); extra maps label -> BLEU cell."""
    header = ["group", *SUMMARY_COLUMNS]
    if extra:
        header.append("BLEU")
    body = []
    for label, summary in rows:
        cells = [label, *summary_cells(summary)]
        if extra:
            cells.append(extra.get(label, "-"))
        body.append(cells)
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    for cells in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    return "\n".join(lines)


# --- JSONL I/O ----------------------------------------------------------------


def record_to_dict(record: RatingRecord) -> dict:
    return asdict(record)


def record_from_dict(data: dict) -> RatingRecord:
    try:
        return RatingRecord(
            rewrite_id=data["rewrite_id"],
            rater_id=data["rater_id"],
            sensical=data["sensical"],
            grammatical=data["grammatical"],
            miss_fact=data["miss_fact"],
            new_fact=data["new_fact"],
            wrong_split=data["wrong_split"],
            need_more_split=data["need_more_split"],
        )
    except KeyError as exc:
        raise ValueError(f"rating record missing field {exc}") from exc


def parse_ratings_jsonl(text: str) -> list[RatingRecord]:
    records = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(record_from_dict(json.loads(line)))
        except (json.JSONDecodeError, ValueError) as exc:
            raise ValueError(f"ratings line {line_no}: {exc}") from exc
    return records


def ratings_to_jsonl(records: Iterable[RatingRecord]) -> str:
    lines = [json.dumps(record_to_dict(r), ensure_ascii=False) for r in records]
    return "\n".join(lines) + ("\n" if lines else "")
