import pytest

from splitrephrase.ratings import (
    RatingRecord,
    aggregate_ratings,
    is_correct,
    is_perfect,
    parse_ratings_jsonl,
    ratings_to_jsonl,
    render_summary_table,
    summary_cells,
)


def record(rewrite="rw1", rater="w1", sensical=5, grammatical=5, miss=False,
           new=False, wrong=False, more=False):
    return RatingRecord(
        rewrite_id=rewrite,
        rater_id=rater,
        sensical=sensical,
        grammatical=grammatical,
        miss_fact=miss,
        new_fact=new,
        wrong_split=wrong,
        need_more_split=more,
    )


def test_range_validation():
    with pytest.raises(ValueError):
        record(sensical=6)
    with pytest.raises(ValueError):
        record(grammatical=-1)
    with pytest.raises(ValueError):
        RatingRecord("r", "w", 5, 5, "no", False, False, False)


def test_is_correct_definition():
    assert is_correct(record())
    assert not is_correct(record(grammatical=4))
    assert not is_correct(record(miss=True))
    assert not is_correct(record(sensical=4))
    assert not is_correct(record(more=True))


def test_is_perfect_requires_all_correct():
    assert is_perfect([record(rater="a"), record(rater="b")])
    assert not is_perfect([record(rater="a"), record(rater="b", grammatical=4)])
    assert not is_perfect([])


def test_is_perfect_rejects_mixed_rewrites():
    with pytest.raises(ValueError):
        is_perfect([record(rewrite="a"), record(rewrite="b")])


def test_aggregate_hand_example():
    records = [
        record(rater="a"),
        record(rater="b", grammatical=3, wrong=True),
    ]
    summary = aggregate_ratings(records)
    assert summary.sensical_percent_top == 100.0
    assert summary.sensical_mean == 5.0
    assert summary.grammatical_percent_top == 50.0
    assert summary.grammatical_mean == 4.0
    assert summary.wrong_split_percent_good == 50.0
    assert summary.miss_fact_percent_good == 100.0
    assert summary.correct_rate == 50.0
    assert summary.n == 2


def test_aggregate_all_identical_correct():
    summary = aggregate_ratings([record(rater=str(i)) for i in range(4)])
    assert summary.correct_rate == 100.0
    for cell in summary_cells(summary):
        assert cell.startswith("100.0") or cell.startswith("100.00")


def test_aggregate_empty_errors():
    with pytest.raises(ValueError):
        aggregate_ratings([])


def test_correct_rate_bounded_by_criterion_rates():
    import random

    rng = random.Random(5)
    records = [
        record(
            rater=str(i),
            sensical=rng.randint(3, 5),
            grammatical=rng.randint(3, 5),
            miss=rng.random() < 0.3,
            new=rng.random() < 0.3,
            wrong=rng.random() < 0.3,
            more=rng.random() < 0.3,
        )
        for i in range(40)
    ]
    s = aggregate_ratings(records)
    favorable = [
        s.sensical_percent_top,
        s.grammatical_percent_top,
        s.miss_fact_percent_good,
        s.new_fact_percent_good,
        s.wrong_split_percent_good,
        s.need_more_split_percent_good,
    ]
    assert s.correct_rate <= min(favorable) + 1e-9


def test_table_cell_format_matches_layout():
    # scale cells look like "71.6%/4.55", defects "94.30%", correct "50.1%"
    import re

    summary = aggregate_ratings(
        [record(rater="a"), record(rater="b", sensical=4, grammatical=3)]
    )
    cells = summary_cells(summary)
    assert re.fullmatch(r"\d+\.\d%/\d\.\d\d", cells[0])
    assert re.fullmatch(r"\d+\.\d\d%", cells[2])
    assert re.fullmatch(r"\d+\.\d%", cells[6])
    table = render_summary_table([("rule", summary)], extra={"rule": "61.3"})
    assert "sensical" in table and "BLEU" in table and "rule" in table


def test_jsonl_roundtrip():
    records = [record(rater="a"), record(rater="b", sensical=0, new=True)]
    text = ratings_to_jsonl(records)
    assert parse_ratings_jsonl(text) == records
    assert '"sensical": 5' in text and '"new_fact": true' in text


def test_jsonl_rejects_bad_rows():
    with pytest.raises(ValueError, match="line 1"):
        parse_ratings_jsonl('{"rewrite_id": "r"}\n')
