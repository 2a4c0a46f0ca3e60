"""Corpus and sentence BLEU with modified n-gram precision and brevity penalty.

Corpus scoring follows the classic definition: clipped n-gram counts summed
over the corpus, geometric mean of p1..p4, brevity penalty against the
closest reference length (shorter wins ties). Sentence scoring adds add-one
smoothing to the n >= 2 counts so single hypotheses do not collapse to zero
on one missing 4-gram; the smoothing choice is recorded in the report.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

MAX_ORDER = 4

_TERMINAL_CHARS = ".!?"


def default_tokenizer(text: str) -> list[str]:
    """Lowercase, split off trailing terminal punctuation, whitespace-split."""
    tokens: list[str] = []
    for chunk in text.lower().split():
        core = chunk.rstrip(_TERMINAL_CHARS)
        if core:
            tokens.append(core)
        tokens.extend(chunk[len(core):])
    return tokens


TOKENIZER_NAME = "lowercase-ws-terminal-punct"


@dataclass(frozen=True)
class BleuReport:
    """Modified n-gram precisions, brevity penalty and the composite score."""

    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    hypothesis_length: int
    reference_length: int
    score: float
    provenance: dict = field(default_factory=dict)


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _closest_ref_length(hyp_len: int, ref_lens: Sequence[int]) -> int:
    return min(ref_lens, key=lambda r: (abs(r - hyp_len), r))


def _pair_statistics(hyp: Sequence[str], refs: Sequence[Sequence[str]]):
    """Per-order (clipped, total) counts for one hypothesis/reference set."""
    stats = []
    for n in range(1, MAX_ORDER + 1):
        counts = _ngram_counts(hyp, n)
        max_ref: Counter = Counter()
        for ref in refs:
            for gram, cnt in _ngram_counts(ref, n).items():
                if cnt > max_ref[gram]:
                    max_ref[gram] = cnt
        clipped = sum(min(cnt, max_ref[gram]) for gram, cnt in counts.items())
        stats.append((clipped, sum(counts.values())))
    return stats


def _compose(
    clipped: list[int],
    totals: list[int],
    hyp_len: int,
    ref_len: int,
    smooth: bool,
    provenance: dict,
) -> BleuReport:
    precisions = []
    for n in range(MAX_ORDER):
        num, den = clipped[n], totals[n]
        if smooth and n >= 1:
            num, den = num + 1, den + 1
        precisions.append(num / den if den else 0.0)

    if hyp_len == 0:
        bp = 0.0
    elif hyp_len > ref_len:
        bp = 1.0
    else:
        bp = math.exp(1.0 - ref_len / hyp_len)

    if all(p > 0 for p in precisions):
        score = 100.0 * bp * math.exp(
            sum(math.log(p) for p in precisions) / MAX_ORDER
        )
    else:
        score = 0.0
    return BleuReport(
        precisions=tuple(precisions),
        brevity_penalty=bp,
        hypothesis_length=hyp_len,
        reference_length=ref_len,
        score=score,
        provenance=provenance,
    )


def bleu_corpus(
    hypotheses: Sequence[str],
    references: Sequence[Sequence[str]],
    tokenizer: Callable[[str], list[str]] | None = None,
    tokenizer_name: str | None = None,
) -> BleuReport:
    """Corpus BLEU-4 over parallel hypothesis and multi-reference lists."""
    if not hypotheses:
        raise ValueError("empty hypothesis list")
    if len(hypotheses) != len(references):
        raise ValueError(
            f"length mismatch: {len(hypotheses)} hypotheses vs "
            f"{len(references)} reference sets"
        )
    tok = tokenizer or default_tokenizer
    clipped = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp_text, ref_texts in zip(hypotheses, references):
        if not ref_texts:
            raise ValueError("every hypothesis needs at least one reference")
        hyp = tok(hyp_text)
        refs = [tok(r) for r in ref_texts]
        hyp_len += len(hyp)
        ref_len += _closest_ref_length(len(hyp), [len(r) for r in refs])
        for n, (c, t) in enumerate(_pair_statistics(hyp, refs)):
            clipped[n] += c
            totals[n] += t
    provenance = {
        "tokenizer": tokenizer_name or (TOKENIZER_NAME if tokenizer is None else "custom"),
        "smoothing": "none",
        "segments": len(hypotheses),
    }
    return _compose(clipped, totals, hyp_len, ref_len, False, provenance)


def bleu_sentence_report(
    hypothesis: str,
    references: Sequence[str],
    tokenizer: Callable[[str], list[str]] | None = None,
) -> BleuReport:
    """Sentence BLEU with add-one smoothing on the n >= 2 counts."""
    if not references:
        raise ValueError("at least one reference is required")
    tok = tokenizer or default_tokenizer
    hyp = tok(hypothesis)
    refs = [tok(r) for r in references]
    provenance = {
        "tokenizer": TOKENIZER_NAME if tokenizer is None else "custom",
        "smoothing": "add-one-n2plus",
        "segments": 1,
    }
    if not hyp:
        warnings.warn("empty hypothesis scored as 0", stacklevel=2)
        provenance["warning"] = "empty-hypothesis"
        return BleuReport((0.0,) * 4, 0.0, 0, min(len(r) for r in refs), 0.0, provenance)
    stats = _pair_statistics(hyp, refs)
    return _compose(
        [c for c, _ in stats],
        [t for _, t in stats],
        len(hyp),
        _closest_ref_length(len(hyp), [len(r) for r in refs]),
        True,
        provenance,
    )


def bleu_sentence(
    hypothesis: str,
    references: Sequence[str],
    tokenizer: Callable[[str], list[str]] | None = None,
) -> float:
    return bleu_sentence_report(hypothesis, references, tokenizer).score
