"""Unsupervised rule-based sentence splitter.

Three handlers run in a fixed order over one annotated sentence:

1. relative-clause extraction keyed on referential SRL arguments (R-ARG*),
2. clause coordination keyed on the word "and",
3. modifier extraction keyed on dependency labels (participial, relative,
   prepositional, adjectival, appositional).

Each handler proposes a pair of clause drafts over source token indices; a
small driver applies them with a global budget of three splits, always
attacking the longest remaining clause, and a realizer turns drafts into
detokenized sentences.

Several surface decisions (clause-root selection after R-ARG extraction,
casing of relocated tokens, tie-breaking among triggers) are reconstructions:
the underlying method is specified only at the level of the three processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .annotations import AnnotatedSentence, SrlArgument, deprel_matches, subtree

COPULA_FORMS = ("is", "are", "was", "were")

# Surfaces dropped when they lead a realized clause.
_LEADING_CONJUNCTIONS = {"and", "or", "but", "nor"}
_TERMINAL_PUNCT = {".", "!", "?"}
_NO_SPACE_BEFORE = {",", ".", ";", ":", "!", "?", ")", "]", "}"}
_PROPER_POS = {"PROPN", "NNP", "NNPS"}


@dataclass(frozen=True)
class EngineConfig:
    """All tunables of the splitter, so runs are reproducible from a manifest."""

    minimum_span: int = 3
    copula_insertion: bool = True
    max_splits: int = 3
    participle_labels: frozenset = frozenset({"acl", "partmod", "vmod", "advcl"})
    relative_clause_labels: frozenset = frozenset({"acl:relcl", "rcmod", "relcl"})
    prepositional_labels: frozenset = frozenset({"nmod", "prep", "obl"})
    adjectival_labels: frozenset = frozenset({"amod"})
    appositional_labels: frozenset = frozenset({"appos"})
    subject_labels: frozenset = frozenset({"nsubj", "nsubj:pass", "nsubjpass"})
    auxiliary_labels: frozenset = frozenset({"aux", "auxpass", "aux:pass", "cop"})

    def modifier_labels(self) -> frozenset:
        return (
            self.participle_labels
            | self.relative_clause_labels
            | self.prepositional_labels
            | self.adjectival_labels
            | self.appositional_labels
        )


DEFAULT_CONFIG = EngineConfig()


@dataclass(frozen=True)
class ClauseDraft:
    """A planned output sentence: source token indices plus inserted prefix words.

    Prefix words may only be copies of source subject tokens or a copula form;
    everything else in the output is a source token.
    """

    token_indices: tuple[int, ...]
    prefix_tokens: tuple[str, ...] = ()
    source_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "token_indices", tuple(self.token_indices))
        object.__setattr__(self, "prefix_tokens", tuple(self.prefix_tokens))
        if any(b <= a for a, b in zip(self.token_indices, self.token_indices[1:])):
            raise ValueError("draft token indices must be strictly ascending")

    def start(self) -> int:
        return self.token_indices[0] if self.token_indices else 0


class TraceEntry(NamedTuple):
    handler: str
    trigger_token: int


@dataclass(frozen=True)
class SplitResult:
    """Realized output sentences plus the record of which handlers fired where."""

    sentences: tuple[str, ...]
    trace: tuple[TraceEntry, ...]
    changed: bool

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(
            self, "trace", tuple(TraceEntry(*t) for t in self.trace)
        )
        if not self.sentences:
            raise ValueError("split result must contain at least one sentence")
        if self.changed != bool(self.trace):
            raise ValueError("changed flag must mirror a non-empty trace")


class _HandlerResult(NamedTuple):
    first: ClauseDraft
    second: ClauseDraft
    trigger_token: int


def _subtree_within(sentence: AnnotatedSentence, root: int, active: frozenset) -> set:
    return set(subtree(sentence, root)) & active


def _clause_root(sentence: AnnotatedSentence, active: frozenset) -> Optional[int]:
    """Root of the active token set: head lies outside; biggest subtree wins ties."""
    candidates = [
        i for i in active
        if sentence.token(i).head == 0 or sentence.token(i).head not in active
    ]
    if not candidates:
        return None
    return max(
        candidates,
        key=lambda i: (len(_subtree_within(sentence, i, active)), -i),
    )


def _arguments(sentence: AnnotatedSentence):
    for frame in sentence.frames:
        for arg in frame.arguments:
            yield frame, arg


def _is_numbered_arg(label: str) -> bool:
    # ARG0..ARG5; modifier (ARGM-*) and referential (R-*) labels do not
    # qualify as copyable subjects.
    return label.startswith("ARG") and len(label) > 3 and label[3].isdigit()


def _span_active(arg: SrlArgument, active: frozenset) -> bool:
    return all(i in active for i in arg.span())


# --- handler: relative clauses via R-ARG -------------------------------------


def _wh_handling(
    sentence: AnnotatedSentence, config: EngineConfig, active: frozenset
) -> Optional[_HandlerResult]:
    rargs = [
        arg
        for _, arg in _arguments(sentence)
        if arg.label.startswith("R-ARG") and _span_active(arg, active)
    ]
    if not rargs:
        return None
    rarg = min(rargs, key=lambda a: a.start)

    # The subject is the nearest numbered argument (any frame) ending before
    # the relative argument.
    subjects = [
        arg
        for _, arg in _arguments(sentence)
        if _is_numbered_arg(arg.label)
        and arg.end < rarg.start
        and _span_active(arg, active)
    ]
    if not subjects:
        return None
    subject = max(subjects, key=lambda a: (a.end, a.start))
    subject_set = set(subject.span())

    # Climb from the relative argument to the highest ancestor whose subtree
    # stays clear of the subject; that subtree is the relative clause.
    clause_root = rarg.start
    cur = rarg.start
    while True:
        head = sentence.token(cur).head
        if head == 0 or head not in active:
            break
        if _subtree_within(sentence, head, active) & subject_set:
            break
        clause_root = head
        cur = head
    clause_set = _subtree_within(sentence, clause_root, active)

    rarg_set = set(rarg.span())
    clause_indices = sorted(clause_set - rarg_set)
    main_indices = sorted(active - clause_set)
    if not clause_indices or not main_indices:
        return None

    main = ClauseDraft(tuple(main_indices), (), sentence.sentence_id)
    clause = ClauseDraft(
        tuple(clause_indices),
        tuple(sentence.surfaces(subject.span())),
        sentence.sentence_id,
    )
    first, second = sorted((main, clause), key=lambda d: d.start())
    return _HandlerResult(first, second, rarg.start)


# --- handler: clause coordination on "and" -----------------------------------


def _frame_verb_tokens(sentence: AnnotatedSentence) -> dict[int, object]:
    out = {}
    for frame in sentence.frames:
        for i in frame.verb().span():
            out[i] = frame
        out.setdefault(frame.predicate_index, frame)
    return out


def _conjunction_handling(
    sentence: AnnotatedSentence, config: EngineConfig, active: frozenset
) -> Optional[_HandlerResult]:
    order = sorted(active)
    verb_tokens = _frame_verb_tokens(sentence)
    for pos, idx in enumerate(order):
        if sentence.token(idx).surface.lower() != "and":
            continue
        if pos + 1 >= len(order):
            continue
        nxt = order[pos + 1]

        before = tuple(i for i in order if i < idx)
        after = tuple(i for i in order if i > idx)
        if not before or not after:
            continue

        # Case ARG: the next word opens an argument span, so a full clause
        # follows and the split needs no subject copy.
        if any(
            arg.start == nxt and arg.label != "V" for _, arg in _arguments(sentence)
        ):
            return _HandlerResult(
                ClauseDraft(before, (), sentence.sentence_id),
                ClauseDraft(after, (), sentence.sentence_id),
                idx,
            )

        # Case V: the next word is a predicate (or an auxiliary leaning on
        # one); the dropped subject is copied from that predicate's own frame.
        frame = verb_tokens.get(nxt)
        if frame is None:
            tok = sentence.token(nxt)
            if deprel_matches(tok.deprel, config.auxiliary_labels):
                frame = verb_tokens.get(tok.head)
        if frame is not None:
            v_index = frame.predicate_index
            preceding = [
                arg
                for arg in frame.arguments
                if _is_numbered_arg(arg.label)
                and arg.end < v_index
                and _span_active(arg, active)
            ]
            if preceding:
                subject = max(preceding, key=lambda a: (a.end, a.start))
                return _HandlerResult(
                    ClauseDraft(before, (), sentence.sentence_id),
                    ClauseDraft(
                        after,
                        tuple(sentence.surfaces(subject.span())),
                        sentence.sentence_id,
                    ),
                    idx,
                )
        # Neither case: noun-phrase coordination, keep scanning.
    return None


def find_conjunction_trigger(
    sentence: AnnotatedSentence, config: EngineConfig = DEFAULT_CONFIG
) -> Optional[int]:
    """Index of the first clause-level "and", or None. Shared with pattern detection."""
    res = _conjunction_handling(
        sentence, config, frozenset(t.index for t in sentence.tokens)
    )
    return res.trigger_token if res else None


# --- handler: modifier extraction ---------------------------------------------


def _is_participle_form(tok) -> bool:
    return tok.pos.upper() in {"VERB", "AUX", "VBG", "VBN"} and tok.surface.lower().endswith(
        ("ing", "ed", "en")
    )


def _insertion_handling(
    sentence: AnnotatedSentence, config: EngineConfig, active: frozenset
) -> Optional[_HandlerResult]:
    root = _clause_root(sentence, active)
    if root is None:
        return None
    modifier_labels = config.modifier_labels()

    node = None
    clause_set: set = set()
    for idx in sorted(active):
        if idx == root:
            continue
        tok = sentence.token(idx)
        if not deprel_matches(tok.deprel, modifier_labels):
            continue
        sub = _subtree_within(sentence, idx, active)
        if len(sub) < config.minimum_span:
            continue
        if not (active - sub):
            continue
        node = idx
        clause_set = sub
        break
    if node is None:
        return None

    subject_indices = _insertion_subject(sentence, config, active, root, node, clause_set)
    if not subject_indices:
        return None

    prefix = list(sentence.surfaces(subject_indices))
    if config.copula_insertion and _needs_copula(sentence, clause_set):
        prefix.append("is")

    extracted = ClauseDraft(
        tuple(sorted(clause_set)), tuple(prefix), sentence.sentence_id
    )
    remainder = ClauseDraft(
        tuple(sorted(active - clause_set)), (), sentence.sentence_id
    )
    first, second = sorted((extracted, remainder), key=lambda d: d.start())
    return _HandlerResult(first, second, node)


def _insertion_subject(
    sentence: AnnotatedSentence,
    config: EngineConfig,
    active: frozenset,
    root: int,
    node: int,
    clause_set: set,
) -> list[int]:
    tok = sentence.token(node)
    if deprel_matches(tok.deprel, config.appositional_labels):
        # An apposition predicates over its head nominal: reuse that nominal
        # (minus the apposition itself) as the subject.
        head = tok.head
        if head == 0 or head not in active:
            return []
        return sorted(_subtree_within(sentence, head, active) - clause_set)
    for idx in sorted(active):
        t = sentence.token(idx)
        if t.head == root and deprel_matches(t.deprel, config.subject_labels):
            return sorted(_subtree_within(sentence, idx, active) - clause_set)
    return []


def _needs_copula(sentence: AnnotatedSentence, clause_set: set) -> bool:
    has_verb = any(f.predicate_index in clause_set for f in sentence.frames)
    if not has_verb:
        return True
    first = next(
        (
            sentence.token(i)
            for i in sorted(clause_set)
            if sentence.token(i).pos.upper() != "PUNCT"
            and any(ch.isalnum() for ch in sentence.token(i).surface)
        ),
        None,
    )
    if first is None:
        return False
    if first.pos.upper() in {"ADJ", "ADP", "JJ", "IN"}:
        return True
    return _is_participle_form(first)


# --- public handler wrappers ---------------------------------------------------


def _full_active(sentence: AnnotatedSentence) -> frozenset:
    return frozenset(t.index for t in sentence.tokens)


def wh_handling(
    sentence: AnnotatedSentence, config: EngineConfig = DEFAULT_CONFIG
) -> Optional[tuple[ClauseDraft, ClauseDraft]]:
    """Split off a relative clause marked by an R-ARG, copying in its subject.

    Returns the two drafts in source order, or None when no referential
    argument (or no preceding subject argument) exists.
    """
    res = _wh_handling(sentence, config, _full_active(sentence))
    return (res.first, res.second) if res else None


def conjunction_handling(
    sentence: AnnotatedSentence, config: EngineConfig = DEFAULT_CONFIG
) -> Optional[tuple[ClauseDraft, ClauseDraft]]:
    """Split at the first clause-level "and"; noun coordination is skipped."""
    res = _conjunction_handling(sentence, config, _full_active(sentence))
    return (res.first, res.second) if res else None


def insertion_handling(
    sentence: AnnotatedSentence, config: EngineConfig = DEFAULT_CONFIG
) -> Optional[tuple[ClauseDraft, ClauseDraft]]:
    """Extract the leftmost sufficiently large modifier clause as its own sentence."""
    res = _insertion_handling(sentence, config, _full_active(sentence))
    return (res.first, res.second) if res else None


# --- realization ----------------------------------------------------------------


def realize(draft: ClauseDraft, source: AnnotatedSentence) -> str:
    """Turn a clause draft into one detokenized sentence.

    Leading commas/conjunctions and trailing commas are stripped, a period is
    appended when no terminal punctuation survives, the sentence-initial
    character is uppercased, and a source-sentence-initial token demoted to
    mid-sentence position is lowercased (proper nouns excepted). All other
    surfaces are copied verbatim.
    """
    if not draft.token_indices:
        raise ValueError("cannot realize an empty draft")

    words = list(draft.prefix_tokens) + source.surfaces(draft.token_indices)
    n_prefix = len(draft.prefix_tokens)

    # A source-sentence-initial token pushed behind a prefix loses its
    # positional capital, unless it is a proper noun.
    if n_prefix and draft.token_indices[0] == 1:
        tok = source.token(1)
        surf = tok.surface
        if (
            tok.pos.upper() not in _PROPER_POS
            and surf[:1].isupper()
            and surf[1:].islower()
        ):
            words[n_prefix] = surf[0].lower() + surf[1:]

    # Strip clause-leading commas/conjunctions; they sit right after any prefix.
    unstripped = list(words)
    while len(words) > n_prefix and (
        words[n_prefix] == "," or words[n_prefix].lower() in _LEADING_CONJUNCTIONS
    ):
        words.pop(n_prefix)
    while words and words[-1] == ",":
        words.pop()
    if words and words[-1] in _TERMINAL_PUNCT:
        while len(words) >= 2 and words[-2] == ",":
            del words[-2]
    if not words:
        # Degenerate draft made purely of strippable tokens: keep it verbatim
        # rather than emit nothing.
        words = unstripped
    if words[-1][-1] not in _TERMINAL_PUNCT:
        words.append(".")
    if words[0][:1].isalpha():
        words[0] = words[0][0].upper() + words[0][1:]

    parts = [words[0]]
    for word in words[1:]:
        if word in _NO_SPACE_BEFORE or word.startswith(("'", "’")):
            parts.append(word)
        else:
            parts.append(" " + word)
    return "".join(parts)


# --- driver ----------------------------------------------------------------------


_PHASES = (
    ("wh_handling", _wh_handling),
    ("conjunction_handling", _conjunction_handling),
    ("insertion_handling", _insertion_handling),
)


@dataclass(frozen=True)
class SplitPlan:
    """Final clause drafts plus the trace that produced them (pre-realization)."""

    drafts: tuple[ClauseDraft, ...]
    trace: tuple[TraceEntry, ...] = field(default_factory=tuple)


def plan_splits(
    sentence: AnnotatedSentence, config: EngineConfig = DEFAULT_CONFIG
) -> SplitPlan:
    """Apply the three handlers with a global budget of max_splits splits.

    Handlers run in their fixed order; within a phase the handler repeatedly
    attacks the longest clause (ties to the earliest) until nothing fires.
    Children inherit the prefix of the clause they replace on the earlier side.
    """
    clauses: list[ClauseDraft] = [
        ClauseDraft(
            tuple(t.index for t in sentence.tokens), (), sentence.sentence_id
        )
    ]
    trace: list[TraceEntry] = []
    budget = config.max_splits

    for name, handler in _PHASES:
        tried: set[tuple[int, ...]] = set()
        while budget > 0:
            pending = [c for c in clauses if c.token_indices not in tried]
            if not pending:
                break
            target = max(
                pending, key=lambda c: (len(c.token_indices), -c.start())
            )
            result = handler(sentence, config, frozenset(target.token_indices))
            if result is None:
                tried.add(target.token_indices)
                continue
            first, second = result.first, result.second
            if target.prefix_tokens:
                first = ClauseDraft(
                    first.token_indices,
                    target.prefix_tokens + first.prefix_tokens,
                    first.source_id,
                )
            pos = clauses.index(target)
            clauses[pos : pos + 1] = [first, second]
            clauses.sort(key=lambda c: c.start())
            trace.append(TraceEntry(name, result.trigger_token))
            budget -= 1
        if budget == 0:
            break

    return SplitPlan(tuple(clauses), tuple(trace))


def split_and_rephrase(
    sentence: AnnotatedSentence, config: EngineConfig = DEFAULT_CONFIG
) -> SplitResult:
    """Split one annotated sentence into simpler realized sentences.

    When no handler fires the realized input is returned unchanged
    (changed=False, single sentence).
    """
    plan = plan_splits(sentence, config)
    sentences = tuple(realize(d, sentence) for d in plan.drafts)
    return SplitResult(sentences=sentences, trace=plan.trace, changed=bool(plan.trace))
