"""Typed linguistic annotations and their interchange formats.

Two layers feed the splitter: dependency parses (CoNLL-U) and semantic role
frames (one JSON object per line). Both are validated on load; everything
downstream may assume single-rooted acyclic trees and well-formed frames.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace


class AnnotationError(ValueError):
    """Raised for malformed or inconsistent annotation input."""


@dataclass(frozen=True)
class Token:
    """One token of a dependency parse. Indices are 1-based; head 0 is the root."""

    index: int
    surface: str
    head: int
    deprel: str
    pos: str = ""

    def __post_init__(self):
        if self.index < 1:
            raise AnnotationError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise AnnotationError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise AnnotationError(f"self-headed token at index {self.index}")
        if not self.surface:
            raise AnnotationError(f"empty surface at index {self.index}")


@dataclass(frozen=True)
class SrlArgument:
    """Labeled argument span, token indices inclusive on both ends."""

    label: str
    start: int
    end: int

    def __post_init__(self):
        if not (1 <= self.start <= self.end):
            raise AnnotationError(
                f"bad argument span [{self.start}, {self.end}] for label {self.label!r}"
            )

    def span(self) -> range:
        return range(self.start, self.end + 1)


@dataclass(frozen=True)
class SrlFrame:
    """One predicate with its labeled argument spans."""

    predicate_index: int
    arguments: tuple[SrlArgument, ...]

    def __post_init__(self):
        object.__setattr__(self, "arguments", tuple(self.arguments))
        verbs = [a for a in self.arguments if a.label == "V"]
        if len(verbs) != 1:
            raise AnnotationError(
                f"frame at predicate {self.predicate_index} needs exactly one V argument, "
                f"got {len(verbs)}"
            )
        v = verbs[0]
        if not (v.start <= self.predicate_index <= v.end):
            raise AnnotationError(
                f"V span [{v.start}, {v.end}] does not contain predicate "
                f"{self.predicate_index}"
            )
        spans = sorted(self.arguments, key=lambda a: a.start)
        for left, right in zip(spans, spans[1:]):
            if right.start <= left.end:
                raise AnnotationError(
                    f"overlapping argument spans {left.label}[{left.start},{left.end}] and "
                    f"{right.label}[{right.start},{right.end}] in frame at "
                    f"{self.predicate_index}"
                )

    def verb(self) -> SrlArgument:
        return next(a for a in self.arguments if a.label == "V")


@dataclass(frozen=True)
class AnnotatedSentence:
    """A sentence with its dependency tree and any SRL frames, immutable."""

    sentence_id: str
    tokens: tuple[Token, ...]
    frames: tuple[SrlFrame, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "frames", tuple(self.frames))
        _validate_tree(self)
        for frame in self.frames:
            for arg in frame.arguments:
                if arg.end > len(self.tokens):
                    raise AnnotationError(
                        f"sentence {self.sentence_id}: argument {arg.label} span "
                        f"[{arg.start}, {arg.end}] exceeds sentence length {len(self.tokens)}"
                    )
            if frame.predicate_index > len(self.tokens):
                raise AnnotationError(
                    f"sentence {self.sentence_id}: predicate index "
                    f"{frame.predicate_index} exceeds sentence length"
                )

    def token(self, index: int) -> Token:
        return self.tokens[index - 1]

    def surfaces(self, indices) -> list[str]:
        return [self.tokens[i - 1].surface for i in indices]

    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    def with_frames(self, frames) -> "AnnotatedSentence":
        return replace(self, frames=tuple(frames))


def _validate_tree(sentence: AnnotatedSentence) -> None:
    n = len(sentence.tokens)
    if n == 0:
        raise AnnotationError(f"sentence {sentence.sentence_id}: no tokens")
    roots = []
    for pos, tok in enumerate(sentence.tokens, start=1):
        if tok.index != pos:
            raise AnnotationError(
                f"sentence {sentence.sentence_id}: token indices not contiguous at {pos}"
            )
        if tok.head > n:
            raise AnnotationError(
                f"sentence {sentence.sentence_id}: head {tok.head} of token {pos} "
                f"out of range"
            )
        if tok.head == 0:
            roots.append(pos)
    if len(roots) != 1:
        raise AnnotationError(
            f"sentence {sentence.sentence_id}: expected a single root, got {roots}"
        )
    # Every token must reach the root; a cycle would loop forever otherwise.
    for tok in sentence.tokens:
        seen = set()
        cur = tok.index
        while cur != 0:
            if cur in seen:
                raise AnnotationError(
                    f"sentence {sentence.sentence_id}: cycle through token {tok.index}"
                )
            seen.add(cur)
            cur = sentence.tokens[cur - 1].head


def root_index(sentence: AnnotatedSentence) -> int:
    return next(t.index for t in sentence.tokens if t.head == 0)


def children_map(sentence: AnnotatedSentence) -> dict[int, list[int]]:
    """Head index -> ordered child indices (0 maps to the root)."""
    out: dict[int, list[int]] = {}
    for tok in sentence.tokens:
        out.setdefault(tok.head, []).append(tok.index)
    return out


def subtree(sentence: AnnotatedSentence, root_index: int) -> list[int]:
    """All token indices transitively governed by root_index, incl. itself, ascending."""
    if not (1 <= root_index <= len(sentence.tokens)):
        raise AnnotationError(
            f"sentence {sentence.sentence_id}: subtree root {root_index} out of range"
        )
    kids = children_map(sentence)
    out = []
    stack = [root_index]
    while stack:
        cur = stack.pop()
        out.append(cur)
        stack.extend(kids.get(cur, ()))
    return sorted(out)


def deprel_matches(deprel: str, labels) -> bool:
    """Case-insensitive match, also trying the prefix before ':' (acl:relcl ~ acl)."""
    d = deprel.lower()
    return d in labels or d.split(":", 1)[0] in labels


# --- CoNLL-U ---------------------------------------------------------------

_CONLLU_COLUMNS = 10


def parse_conllu(text: str) -> list[AnnotatedSentence]:
    """Parse CoNLL-U text into sentences with empty frame lists.

    Multiword-token and empty-node lines (IDs with '-' or '.') are skipped.
    sentence_id comes from a `# sent_id = ...` comment, defaulting to the
    0-based ordinal of the sentence in the file.
    """
    sentences: list[AnnotatedSentence] = []
    tokens: list[Token] = []
    sent_id: str | None = None
    ordinal = 0

    def flush(line_no: int):
        nonlocal tokens, sent_id, ordinal
        if not tokens:
            sent_id = None
            return
        sid = sent_id if sent_id is not None else str(ordinal)
        try:
            sentences.append(AnnotatedSentence(sid, tuple(tokens)))
        except AnnotationError as exc:
            raise AnnotationError(
                f"sentence {sid!r} ending at line {line_no}: {exc}"
            ) from exc
        tokens = []
        sent_id = None
        ordinal += 1

    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            flush(line_no)
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("sent_id") and "=" in body:
                sent_id = body.split("=", 1)[1].strip()
            continue
        cols = line.split("\t")
        if len(cols) != _CONLLU_COLUMNS:
            raise AnnotationError(
                f"line {line_no}: expected {_CONLLU_COLUMNS} tab-separated columns, "
                f"got {len(cols)}"
            )
        tok_id, form, _, upos, _, _, head, deprel = cols[:8]
        if "-" in tok_id or "." in tok_id:
            continue  # multiword token / empty node
        if not tok_id.isdigit():
            raise AnnotationError(f"line {line_no}: non-numeric token ID {tok_id!r}")
        try:
            head_val = int(head)
        except ValueError:
            raise AnnotationError(f"line {line_no}: non-numeric HEAD {head!r}") from None
        try:
            tokens.append(
                Token(
                    index=int(tok_id),
                    surface=form,
                    head=head_val,
                    deprel="" if deprel == "_" else deprel,
                    pos="" if upos == "_" else upos,
                )
            )
        except AnnotationError as exc:
            raise AnnotationError(f"line {line_no}: {exc}") from exc
    flush(line_no)
    return sentences


def to_conllu(sentences) -> str:
    """Serialize sentences back to CoNLL-U (round-trips index/surface/pos/head/deprel)."""
    blocks = []
    for sent in sentences:
        lines = [f"# sent_id = {sent.sentence_id}"]
        for tok in sent.tokens:
            lines.append(
                "\t".join(
                    [
                        str(tok.index),
                        tok.surface,
                        "_",
                        tok.pos or "_",
                        "_",
                        "_",
                        str(tok.head),
                        tok.deprel or "_",
                        "_",
                        "_",
                    ]
                )
            )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


# --- SRL JSONL --------------------------------------------------------------


def parse_srl(text: str) -> dict[str, list[SrlFrame]]:
    """Parse line-delimited SRL records into a sentence_id -> frames map.

    Frame-internal invariants (single V containing the predicate, no span
    overlap) are checked here; span-versus-length is checked when frames are
    attached to their sentence.
    """
    out: dict[str, list[SrlFrame]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise AnnotationError(f"SRL line {line_no}: invalid JSON: {exc}") from exc
        try:
            sid = rec["sentence_id"]
            frames = [
                SrlFrame(
                    predicate_index=fr["predicate_index"],
                    arguments=tuple(
                        SrlArgument(a["label"], a["start"], a["end"])
                        for a in fr["arguments"]
                    ),
                )
                for fr in rec["frames"]
            ]
        except KeyError as exc:
            raise AnnotationError(
                f"SRL line {line_no}: missing field {exc}"
            ) from exc
        except AnnotationError as exc:
            raise AnnotationError(
                f"SRL record for sentence {rec.get('sentence_id', '?')!r}: {exc}"
            ) from exc
        out.setdefault(sid, []).extend(frames)
    return out


def to_srl_jsonl(sentences) -> str:
    lines = []
    for sent in sentences:
        lines.append(
            json.dumps(
                {
                    "sentence_id": sent.sentence_id,
                    "frames": [
                        {
                            "predicate_index": fr.predicate_index,
                            "arguments": [
                                {"label": a.label, "start": a.start, "end": a.end}
                                for a in fr.arguments
                            ],
                        }
                        for fr in sent.frames
                    ],
                },
                ensure_ascii=False,
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def attach_frames(
    sentences, frames_by_id: dict[str, list[SrlFrame]]
) -> list[AnnotatedSentence]:
    """Join parsed frames onto sentences by sentence_id, validating spans."""
    out = []
    for sent in sentences:
        frames = frames_by_id.get(sent.sentence_id, [])
        try:
            out.append(sent.with_frames(frames))
        except AnnotationError as exc:
            raise AnnotationError(f"sentence {sent.sentence_id!r}: {exc}") from exc
    return out


def load_annotations(conllu_path, srl_path=None) -> list[AnnotatedSentence]:
    """Read a CoNLL-U file and optionally join an SRL JSONL file onto it."""
    with open(conllu_path, encoding="utf-8") as fh:
        sentences = parse_conllu(fh.read())
    if srl_path is not None:
        with open(srl_path, encoding="utf-8") as fh:
            frames = parse_srl(fh.read())
        sentences = attach_frames(sentences, frames)
    return sentences
