"""Parsing backends producing token-level dependency and SRL annotations.

Two backends ship by default:

* HeuristicBackend: deterministic, dependency-light tagger and tree builder.
  Linguistically crude, but always available and guaranteed to produce
  structurally valid output (single root, acyclic, in-range heads, one
  non-overlapping V span per frame).
* SpacyBackend: uses an installed spaCy pipeline when one is available; SRL
  spans are approximated from the dependency tree since spaCy has no SRL
  component.

Both normalize to the same span-based ARGn / R-ARGn / V inventory, so
downstream consumers never see backend detail.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class ParsedToken:
    index: int
    surface: str
    pos: str
    head: int
    deprel: str


@dataclass(frozen=True)
class SpanArgument:
    label: str
    start: int
    end: int


@dataclass(frozen=True)
class Frame:
    predicate_index: int
    arguments: tuple[SpanArgument, ...]


@dataclass(frozen=True)
class ParsedSentence:
    tokens: tuple[ParsedToken, ...]
    frames: tuple[Frame, ...]


_PUNCT = re.compile(r"^[^\w]+$", re.UNICODE)
_SPLIT_PUNCT = re.compile(r"(\W)", re.UNICODE)

_DETS = {"the", "a", "an", "this", "that", "these", "those", "her", "his", "its", "their"}
_ADPS = {
    "in", "on", "at", "by", "from", "of", "with", "as", "for", "to", "into",
    "among", "along", "over", "under", "between", "about", "after", "before",
    "during", "through", "without", "near",
}
_AUX = {
    "is", "are", "was", "were", "be", "been", "being", "am",
    "has", "have", "had", "do", "does", "did",
    "will", "would", "can", "could", "shall", "should", "may", "might", "must",
}
_CCONJ = {"and", "or", "but", "nor"}
_PRON = {"he", "she", "it", "they", "we", "you", "i", "which", "who", "whom", "whose"}
_VERB_SUFFIXES = ("ed", "ing", "ify", "ise", "ize", "ate")
_COMMON_VERBS = {
    "said", "made", "found", "built", "born", "won", "held", "sold", "met",
    "ran", "sang", "sings", "runs", "plays", "works", "married", "opened",
    "created", "located", "preceded", "voiced", "designed", "founded",
    "serving", "invoice", "fell", "hurt", "dances",
}


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    for chunk in text.split():
        parts = [p for p in _SPLIT_PUNCT.split(chunk) if p]
        # keep multi-char word pieces intact, emit punctuation separately
        buff = ""
        for part in parts:
            if _PUNCT.match(part):
                if buff:
                    tokens.append(buff)
                    buff = ""
                tokens.append(part)
            else:
                buff += part
        if buff:
            tokens.append(buff)
    return tokens


def _tag(word: str, position: int) -> str:
    low = word.lower()
    if _PUNCT.match(word):
        return "PUNCT"
    if low in _DETS:
        return "DET"
    if low in _ADPS:
        return "ADP"
    if low in _AUX:
        return "AUX"
    if low in _CCONJ:
        return "CCONJ"
    if low in _PRON:
        return "PRON"
    if word.isdigit():
        return "NUM"
    if low in _COMMON_VERBS or low.endswith(_VERB_SUFFIXES):
        return "VERB"
    if position > 1 and word[:1].isupper():
        return "PROPN"
    return "NOUN"


class HeuristicBackend:
    """Deterministic fallback parser; valid structure over clever linguistics."""

    name = "heuristic-v1"

    def parse(self, text: str) -> ParsedSentence:
        words = tokenize(text)
        if not words:
            raise ValueError("sentence has no tokens")
        n = len(words)
        pos = [_tag(w, i + 1) for i, w in enumerate(words)]

        root = next((i + 1 for i, p in enumerate(pos) if p == "VERB"), None)
        if root is None:
            root = next((i + 1 for i, p in enumerate(pos) if p == "AUX"), None)
        if root is None:
            root = next((i + 1 for i, p in enumerate(pos) if p == "NOUN"), 1)

        def next_nominal(after: int) -> int | None:
            for j in range(after + 1, n + 1):
                if pos[j - 1] in {"NOUN", "PROPN", "NUM", "PRON"}:
                    return j
            return None

        heads = [0] * (n + 1)
        deprels = [""] * (n + 1)
        subject_done = False
        for i in range(1, n + 1):
            if i == root:
                deprels[i] = "root"
                continue
            p = pos[i - 1]
            if p in {"DET", "ADP"}:
                target = next_nominal(i)
                heads[i] = target if target and target != i else root
                deprels[i] = "det" if p == "DET" else "case"
            elif p == "CCONJ":
                target = next_nominal(i)
                heads[i] = target if target and target != i else root
                deprels[i] = "cc"
            elif p == "PUNCT":
                heads[i] = root
                deprels[i] = "punct"
            elif p == "PROPN" and i > 1 and pos[i - 2] == "PROPN" and i - 1 != root:
                heads[i] = i - 1
                deprels[i] = "flat"
            elif p in {"NOUN", "PROPN", "NUM", "PRON"}:
                heads[i] = root
                if not subject_done and i < root:
                    deprels[i] = "nsubj"
                    subject_done = True
                else:
                    deprels[i] = "obj" if i > root else "dep"
            else:
                heads[i] = root
                deprels[i] = "aux" if p == "AUX" else "dep"
        # forward attachments point at later nominals, everything else at the
        # root, so the head graph cannot cycle
        tokens = tuple(
            ParsedToken(i, words[i - 1], pos[i - 1], heads[i], deprels[i])
            for i in range(1, n + 1)
        )
        return ParsedSentence(tokens=tokens, frames=tuple(self._frames(pos, n)))

    def _frames(self, pos: list[str], n: int) -> list[Frame]:
        nominal = {"NOUN", "PROPN", "NUM", "PRON", "DET"}
        frames = []
        for v in range(1, n + 1):
            if pos[v - 1] != "VERB":
                continue
            arguments = [SpanArgument("V", v, v)]
            # agent span: the last nominal run before the predicate
            end0 = v - 1
            while end0 >= 1 and pos[end0 - 1] not in nominal:
                end0 -= 1
            if end0 >= 1:
                start0 = end0
                while start0 > 1 and pos[start0 - 2] in nominal:
                    start0 -= 1
                arguments.insert(0, SpanArgument("ARG0", start0, end0))
            end = n
            while end > v and pos[end - 1] == "PUNCT":
                end -= 1
            if end > v:
                arguments.append(SpanArgument("ARG1", v + 1, end))
            frames.append(Frame(predicate_index=v, arguments=tuple(arguments)))
        return frames


class SpacyBackend:
    """Adapter over an installed spaCy pipeline (dependency side only).

    SRL spans are synthesized from subject/object subtrees, normalized to the
    ARGn inventory. Only constructed when spaCy and a model are importable.
    """

    def __init__(self, model: str = "en_core_web_sm"):
        import spacy

        self._nlp = spacy.load(model)
        self.name = f"spacy-{model}-{self._nlp.meta.get('version', '?')}"

    def parse(self, text: str) -> ParsedSentence:
        doc = self._nlp(text)
        tokens = []
        for tok in doc:
            head = 0 if tok.head is tok else tok.head.i + 1
            tokens.append(
                ParsedToken(tok.i + 1, tok.text, tok.pos_, head, tok.dep_.lower())
            )
        frames = []
        for tok in doc:
            if tok.pos_ != "VERB":
                continue
            v = tok.i + 1
            arguments = [SpanArgument("V", v, v)]
            subj = [t for t in tok.lefts if t.dep_.startswith("nsubj")]
            if subj:
                span = sorted(t.i + 1 for t in subj[0].subtree)
                if span[-1] < v:
                    arguments.insert(0, SpanArgument("ARG0", span[0], span[-1]))
            obj = [t for t in tok.rights if t.dep_ in {"dobj", "obj", "attr"}]
            if obj:
                span = sorted(t.i + 1 for t in obj[0].subtree)
                if span[0] > v:
                    arguments.append(SpanArgument("ARG1", span[0], span[-1]))
            frames.append(Frame(predicate_index=v, arguments=tuple(arguments)))
        return ParsedSentence(tokens=tuple(tokens), frames=tuple(frames))


def get_backend(name: str):
    if name == "heuristic":
        return HeuristicBackend()
    if name.startswith("spacy"):
        model = name.split(":", 1)[1] if ":" in name else "en_core_web_sm"
        return SpacyBackend(model)
    raise ValueError(f"unknown backend {name!r}")
