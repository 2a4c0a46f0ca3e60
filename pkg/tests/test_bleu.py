import math
import random

import pytest

from splitrephrase.bleu import (
    bleu_corpus,
    bleu_sentence,
    bleu_sentence_report,
    default_tokenizer,
)


# --- independent oracle: direct enumeration over n-gram positions -------------
#
# Deliberately written differently from the implementation: no Counter
# clipping, just position-by-position matching bookkeeping per n-gram string.


def oracle_ngrams(tokens, n):
    return [" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def oracle_pair_stats(hyp, refs, n):
    grams = oracle_ngrams(hyp, n)
    clipped = 0
    for gram in set(grams):
        hyp_count = sum(1 for g in grams if g == gram)
        best_ref = 0
        for ref in refs:
            ref_count = sum(1 for g in oracle_ngrams(ref, n) if g == gram)
            best_ref = max(best_ref, ref_count)
        clipped += min(hyp_count, best_ref)
    return clipped, len(grams)


def oracle_corpus(hyp_texts, ref_texts):
    hyps = [default_tokenizer(h) for h in hyp_texts]
    refs = [[default_tokenizer(r) for r in rs] for rs in ref_texts]
    c = sum(len(h) for h in hyps)
    r = 0
    for h, rs in zip(hyps, refs):
        lens = sorted((abs(len(x) - len(h)), len(x)) for x in rs)
        r += lens[0][1]
    ps = []
    for n in range(1, 5):
        num = den = 0
        for h, rs in zip(hyps, refs):
            cl, tot = oracle_pair_stats(h, rs, n)
            num += cl
            den += tot
        ps.append(num / den if den else 0.0)
    if any(p == 0 for p in ps):
        return 0.0
    bp = 1.0 if c > r else math.exp(1 - r / c)
    return 100.0 * bp * math.exp(sum(math.log(p) for p in ps) / 4)


def oracle_sentence(hyp_text, ref_texts):
    hyp = default_tokenizer(hyp_text)
    refs = [default_tokenizer(r) for r in ref_texts]
    if not hyp:
        return 0.0
    ps = []
    for n in range(1, 5):
        cl, tot = oracle_pair_stats(hyp, refs, n)
        if n >= 2:
            cl, tot = cl + 1, tot + 1
        ps.append(cl / tot if tot else 0.0)
    if any(p == 0 for p in ps):
        return 0.0
    lens = sorted((abs(len(x) - len(hyp)), len(x)) for x in refs)
    r = lens[0][1]
    bp = 1.0 if len(hyp) > r else math.exp(1 - r / len(hyp))
    return 100.0 * bp * math.exp(sum(math.log(p) for p in ps) / 4)


# --- fixed cases --------------------------------------------------------------


def test_identity_scores_100():
    report = bleu_corpus(["The cat sat on the mat ."], [["The cat sat on the mat ."]])
    assert report.score == 100.0
    assert report.brevity_penalty == 1.0


def test_tokenizer_lowercases_and_splits_terminal():
    assert default_tokenizer("The cat sat.") == ["the", "cat", "sat", "."]
    assert default_tokenizer("Really?!") == ["really", "?", "!"]
    assert default_tokenizer("No. 5 stays") == ["no", ".", "5", "stays"]


def test_clipping_the_the_the():
    report = bleu_corpus(["the the the"], [["the cat"]])
    assert report.precisions[0] == pytest.approx(1 / 3)
    assert report.brevity_penalty == 1.0  # hypothesis longer than reference
    assert report.score == 0.0  # no bigram survives


def test_sentence_identity_and_disjoint():
    assert bleu_sentence("the cat sat .", ["the cat sat ."]) == 100.0
    assert bleu_sentence("xyz", ["completely different words"]) == 0.0


def test_sentence_smoothed_case_frozen_value():
    # independent-oracle value computed from the direct formula:
    # p = (1, 3/4, 2/3, 1/2), BP = exp(-1/4)
    expected = 100 * math.exp(-0.25) * (1 * 0.75 * (2 / 3) * 0.5) ** 0.25
    assert expected == pytest.approx(55.069531, abs=1e-4)
    assert bleu_sentence("the cat sat .", ["the cat sat down ."]) == pytest.approx(
        expected, abs=1e-9
    )


def test_empty_hypothesis_warns_not_raises():
    with pytest.warns(UserWarning):
        score = bleu_sentence("", ["something"])
    assert score == 0.0
    with pytest.warns(UserWarning):
        report = bleu_sentence_report("", ["something"])
    assert report.provenance.get("warning") == "empty-hypothesis"


def test_errors_on_bad_shapes():
    with pytest.raises(ValueError):
        bleu_corpus([], [])
    with pytest.raises(ValueError):
        bleu_corpus(["a"], [["a"], ["b"]])
    with pytest.raises(ValueError):
        bleu_corpus(["a"], [[]])
    with pytest.raises(ValueError):
        bleu_sentence("a", [])


def test_brevity_penalty_closest_reference_shorter_wins_ties():
    # hyp length 3; refs lengths 2 and 4 tie on distance -> r = 2 -> BP = 1
    report = bleu_corpus(["a b c"], [["a b", "a b c d"]])
    assert report.reference_length == 2
    assert report.brevity_penalty == 1.0


def test_multi_reference_clipping_uses_max():
    report = bleu_corpus(["a a b"], [["a a", "b b"]])
    assert report.precisions[0] == pytest.approx(1.0)


def test_report_has_provenance():
    report = bleu_corpus(["a b"], [["a b"]])
    assert report.provenance["tokenizer"]
    assert report.provenance["smoothing"] == "none"


# --- randomized equivalence against the oracle ----------------------------------


VOCAB = ["the", "cat", "dog", "sat", "ran", "on", "mat", "fast", "a", "blue"]


def _random_text(rng, max_tokens=12):
    n = rng.randint(1, max_tokens)
    words = [rng.choice(VOCAB) for _ in range(n)]
    if rng.random() < 0.7:
        words[-1] = words[-1] + "."
    return " ".join(words)


def test_corpus_matches_oracle_on_random_corpora():
    rng = random.Random(42)
    for _ in range(50):
        size = rng.randint(1, 5)
        hyps = [_random_text(rng) for _ in range(size)]
        refs = [
            [_random_text(rng) for _ in range(rng.randint(1, 3))] for _ in range(size)
        ]
        assert bleu_corpus(hyps, refs).score == pytest.approx(
            oracle_corpus(hyps, refs), abs=1e-9
        )


def test_sentence_matches_oracle_on_random_pairs():
    rng = random.Random(43)
    for _ in range(100):
        hyp = _random_text(rng)
        refs = [_random_text(rng) for _ in range(rng.randint(1, 3))]
        assert bleu_sentence(hyp, refs) == pytest.approx(
            oracle_sentence(hyp, refs), abs=1e-9
        )
