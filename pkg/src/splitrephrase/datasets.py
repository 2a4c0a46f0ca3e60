"""Benchmark corpora: loading, descriptive statistics, gold gating, patterns.

The canonical on-disk format is one JSON object per line:

    {"pair_id": ..., "complex": ..., "rewrites":
        [{"rewrite_id": ..., "author": ..., "sentences": [...]}]}

A tab-separated adapter (`complex \\t rewrite`) covers raw releases; rows
sharing a complex sentence merge into one pair. The pattern detector is a
deterministic heuristic over annotations, a stand-in for manual labeling:
only orderings and containment are trustworthy, never exact counts.
"""

from __future__ import annotations

import enum
import json
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .annotations import AnnotatedSentence, deprel_matches, subtree
from .engine import DEFAULT_CONFIG, EngineConfig, find_conjunction_trigger
from .ratings import RatingRecord, is_perfect


@dataclass(frozen=True)
class Rewrite:
    rewrite_id: str
    author: str
    sentences: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if not self.sentences:
            raise ValueError(f"rewrite {self.rewrite_id!r} has no sentences")
        if self.author != "human" and not self.author.startswith("model:"):
            raise ValueError(
                f"author must be 'human' or 'model:<name>', got {self.author!r}"
            )

    def text(self) -> str:
        return " ".join(self.sentences)


@dataclass(frozen=True)
class ComplexSimplePair:
    pair_id: str
    complex_text: str
    rewrites: tuple[Rewrite, ...]

    def __post_init__(self):
        object.__setattr__(self, "rewrites", tuple(self.rewrites))
        if not self.complex_text:
            raise ValueError(f"pair {self.pair_id!r} has empty complex text")


@dataclass(frozen=True)
class Benchmark:
    name: str
    pairs: tuple[ComplexSimplePair, ...]
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        seen = set()
        for pair in self.pairs:
            if pair.pair_id in seen:
                raise ValueError(f"duplicate pair_id {pair.pair_id!r}")
            seen.add(pair.pair_id)

    def rewrite_index(self) -> dict[str, tuple[ComplexSimplePair, Rewrite]]:
        out = {}
        for pair in self.pairs:
            for rw in pair.rewrites:
                out[rw.rewrite_id] = (pair, rw)
        return out


class PatternLabel(enum.Enum):
    RC = "rc"
    CONJ = "conj"
    PART = "part"
    PREP = "prep"
    ADV = "adv"
    APPOS = "appos"
    INF = "inf"


@dataclass(frozen=True)
class DatasetStats:
    n_complex: int
    n_simple: int
    toks_per_complex: float
    sents_per_simple: float


_TOKEN_SPLIT = re.compile(r"\s+")
_TERMINAL_CHARS = ".!?"


def count_tokens(text: str) -> int:
    """Whitespace token count after splitting off trailing terminal punctuation."""
    n = 0
    for chunk in _TOKEN_SPLIT.split(text.strip()):
        if not chunk:
            continue
        core = chunk.rstrip(_TERMINAL_CHARS)
        n += (1 if core else 0) + (len(chunk) - len(core))
    return n


# --- loading and saving -------------------------------------------------------


def load_benchmark(
    path,
    format: str = "canonical_jsonl",
    sentence_separator: str = "|",
    author: str = "human",
    name: str | None = None,
) -> Benchmark:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    bench_name = name or str(path)
    if format == "canonical_jsonl":
        return _parse_canonical(text, bench_name, provenance=str(path))
    if format == "tsv_pairs":
        return _parse_tsv(text, bench_name, sentence_separator, author, provenance=str(path))
    raise ValueError(f"unknown benchmark format {format!r}")


def _parse_canonical(text: str, name: str, provenance: str) -> Benchmark:
    pairs = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            pairs.append(
                ComplexSimplePair(
                    pair_id=rec["pair_id"],
                    complex_text=rec["complex"],
                    rewrites=tuple(
                        Rewrite(rw["rewrite_id"], rw["author"], tuple(rw["sentences"]))
                        for rw in rec["rewrites"]
                    ),
                )
            )
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ValueError(f"{provenance}:{line_no}: {exc}") from exc
    if not pairs:
        raise ValueError(f"{provenance}: empty benchmark file")
    return Benchmark(name=name, pairs=tuple(pairs), provenance=provenance)


def _parse_tsv(
    text: str, name: str, separator: str, author: str, provenance: str
) -> Benchmark:
    by_complex: dict[str, list[list[str]]] = {}
    order: list[str] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(
                f"{provenance}:{line_no}: expected 2 tab-separated columns, got {len(cols)}"
            )
        complex_text, rewrite_field = cols[0].strip(), cols[1]
        if not complex_text or not rewrite_field.strip():
            raise ValueError(f"{provenance}:{line_no}: empty column")
        sentences = [s.strip() for s in rewrite_field.split(separator) if s.strip()]
        if not sentences:
            raise ValueError(f"{provenance}:{line_no}: rewrite field has no sentences")
        if complex_text not in by_complex:
            by_complex[complex_text] = []
            order.append(complex_text)
        by_complex[complex_text].append(sentences)
    if not order:
        raise ValueError(f"{provenance}: empty benchmark file")
    pairs = []
    for i, complex_text in enumerate(order):
        pair_id = f"pair-{i:04d}"
        rewrites = tuple(
            Rewrite(f"{pair_id}-r{j}", author, tuple(sents))
            for j, sents in enumerate(by_complex[complex_text])
        )
        pairs.append(ComplexSimplePair(pair_id, complex_text, rewrites))
    return Benchmark(name=name, pairs=tuple(pairs), provenance=provenance)


def benchmark_to_jsonl(benchmark: Benchmark) -> str:
    lines = []
    for pair in benchmark.pairs:
        lines.append(
            json.dumps(
                {
                    "pair_id": pair.pair_id,
                    "complex": pair.complex_text,
                    "rewrites": [
                        {
                            "rewrite_id": rw.rewrite_id,
                            "author": rw.author,
                            "sentences": list(rw.sentences),
                        }
                        for rw in pair.rewrites
                    ],
                },
                ensure_ascii=False,
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def save_benchmark(benchmark: Benchmark, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(benchmark_to_jsonl(benchmark))


# --- statistics ----------------------------------------------------------------


def descriptive_stats(benchmark: Benchmark) -> DatasetStats:
    if not benchmark.pairs:
        raise ValueError("empty benchmark")
    n_complex = len(benchmark.pairs)
    rewrites = [rw for pair in benchmark.pairs for rw in pair.rewrites]
    n_simple = len(rewrites)
    toks = sum(count_tokens(p.complex_text) for p in benchmark.pairs) / n_complex
    sents = (
        sum(len(rw.sentences) for rw in rewrites) / n_simple if n_simple else 0.0
    )
    return DatasetStats(
        n_complex=n_complex,
        n_simple=n_simple,
        toks_per_complex=toks,
        sents_per_simple=sents,
    )


# --- gold-standard construction --------------------------------------------------


def build_gold(benchmark: Benchmark, ratings: Sequence[RatingRecord]) -> Benchmark:
    """Keep exactly the rewrites whose every rating is correct; drop empty pairs."""
    known = benchmark.rewrite_index()
    by_rewrite: dict[str, list[RatingRecord]] = defaultdict(list)
    for record in ratings:
        if record.rewrite_id not in known:
            raise ValueError(f"rating references unknown rewrite {record.rewrite_id!r}")
        by_rewrite[record.rewrite_id].append(record)

    pairs = []
    for pair in benchmark.pairs:
        kept = tuple(
            rw
            for rw in pair.rewrites
            if rw.rewrite_id in by_rewrite and is_perfect(by_rewrite[rw.rewrite_id])
        )
        if kept:
            pairs.append(
                ComplexSimplePair(pair.pair_id, pair.complex_text, kept)
            )
    return Benchmark(
        name=f"{benchmark.name}-gold",
        pairs=tuple(pairs),
        provenance=benchmark.provenance,
    )


# --- corpus preparation -----------------------------------------------------------

_CLEAN_ALLOWED = re.compile(r"[^0-9A-Za-z\s,.]")


def is_clean(text: str) -> bool:
    """True when the text uses only alphanumerics, whitespace, commas and periods."""
    return _CLEAN_ALLOWED.search(text) is None


def clean_text(text: str) -> str:
    """Drop every character outside the allowed set. Never applied implicitly."""
    return _CLEAN_ALLOWED.sub("", text)


# --- syntactic pattern heuristics ---------------------------------------------------

_INF_HEAD_LABELS = frozenset({"xcomp", "acl", "advcl", "ccomp", "infmod"})
_ADV_LABELS = frozenset({"advcl"})


def _is_participle(tok) -> bool:
    return tok.pos.upper() in {"VERB", "AUX", "VBG", "VBN"} and tok.surface.lower().endswith(
        ("ing", "ed", "en")
    )


def detect_patterns(
    sentence: AnnotatedSentence, config: EngineConfig = DEFAULT_CONFIG
) -> set[PatternLabel]:
    """Heuristic multi-label pattern detection from annotations only."""
    labels: set[PatternLabel] = set()
    tokens = sentence.tokens

    if any(deprel_matches(t.deprel, config.relative_clause_labels) for t in tokens):
        labels.add(PatternLabel.RC)
    if any(
        arg.label.startswith("R-ARG")
        for frame in sentence.frames
        for arg in frame.arguments
    ):
        labels.add(PatternLabel.RC)

    if find_conjunction_trigger(sentence, config) is not None:
        labels.add(PatternLabel.CONJ)

    for tok in tokens:
        if (
            deprel_matches(tok.deprel, config.participle_labels)
            and not deprel_matches(tok.deprel, config.relative_clause_labels)
            and _is_participle(tok)
        ):
            labels.add(PatternLabel.PART)
        if (
            deprel_matches(tok.deprel, config.prepositional_labels)
            and len(subtree(sentence, tok.index)) >= config.minimum_span
        ):
            labels.add(PatternLabel.PREP)
        if deprel_matches(tok.deprel, _ADV_LABELS):
            labels.add(PatternLabel.ADV)
        if deprel_matches(tok.deprel, config.appositional_labels):
            labels.add(PatternLabel.APPOS)
        if tok.surface.lower() == "to" and tok.head != 0:
            head = tokens[tok.head - 1]
            if head.pos.upper() in {"VERB", "AUX"} and deprel_matches(
                head.deprel, _INF_HEAD_LABELS
            ):
                labels.add(PatternLabel.INF)

    for frame in sentence.frames:
        if any(arg.label.startswith("ARGM") and arg.start == 1 for arg in frame.arguments):
            labels.add(PatternLabel.ADV)

    return labels


@dataclass(frozen=True)
class PatternReport:
    counts: Mapping[str, int]
    patterns_per_sentence: float
    sample_size: int


def pattern_report(
    benchmark: Benchmark,
    annotations: Mapping[str, AnnotatedSentence],
    config: EngineConfig = DEFAULT_CONFIG,
) -> PatternReport:
    """Count sentences carrying each pattern over annotated pairs."""
    missing = [p.pair_id for p in benchmark.pairs if p.pair_id not in annotations]
    if missing:
        raise ValueError(f"missing annotations for pairs: {missing}")
    counts = {label.value: 0 for label in PatternLabel}
    total_labels = 0
    for pair in benchmark.pairs:
        labels = detect_patterns(annotations[pair.pair_id], config)
        total_labels += len(labels)
        for label in labels:
            counts[label.value] += 1
    return PatternReport(
        counts=counts,
        patterns_per_sentence=total_labels / len(benchmark.pairs),
        sample_size=len(benchmark.pairs),
    )
