import random
from pathlib import Path

import pytest


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed", "skipped"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = str(getattr(report, "nodeid", ""))
            if "test_acceptance.py" in nodeid and getattr(report, "when", "call") == "call":
                rows.append((nodeid.split("::")[-1], outcome.upper()))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(rows):
            terminalreporter.write_line(f"{outcome:8s} {name}")

from splitrephrase.annotations import (
    AnnotatedSentence,
    SrlArgument,
    SrlFrame,
    Token,
    load_annotations,
)

FIXTURES = Path(__file__).parent / "fixtures"

# Released benchmark data is optional; point this at a directory holding
# wiki_bm.jsonl / cont_bm.jsonl / websplit.jsonl (canonical format) to enable
# the corpus-level reproduction tests.
DATA_DIR_ENV = "SPLITREPHRASE_DATA_DIR"


@pytest.fixture(scope="session")
def golden_sentences():
    sents = load_annotations(FIXTURES / "golden.conllu", FIXTURES / "golden.srl.jsonl")
    return {s.sentence_id: s for s in sents}


@pytest.fixture(scope="session")
def websplit_style_sentences():
    return load_annotations(
        FIXTURES / "websplit_style.conllu", FIXTURES / "websplit_style.srl.jsonl"
    )


_VOCAB = (
    "alpha bravo castle delta echo fox grid hotel india jazz kilo lima "
    "mike north oscar photo quart river sierra tango union victor"
).split()

_SAFE_DEPRELS = ["nsubj", "obj", "det", "case", "flat", "compound", "punct", "cc"]
_TRIGGER_DEPRELS = _SAFE_DEPRELS + ["acl", "advcl", "amod", "nmod", "obl", "appos", "acl:relcl"]
_POS = ["NOUN", "VERB", "ADJ", "ADP", "DET", "PROPN", "ADV", "AUX", "NUM"]


def random_tree(rng: random.Random, n: int) -> list[int]:
    """Random heads forming a single-rooted tree over 1..n."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = [0] * (n + 1)
    for pos, node in enumerate(order):
        heads[node] = 0 if pos == 0 else order[rng.randrange(pos)]
    return heads


def random_annotated_sentence(
    rng: random.Random,
    min_tokens: int = 3,
    max_tokens: int = 14,
    with_triggers: bool = True,
    sentence_id: str = "random",
) -> AnnotatedSentence:
    n = rng.randint(min_tokens, max_tokens)
    heads = random_tree(rng, n)
    deprels = _TRIGGER_DEPRELS if with_triggers else _SAFE_DEPRELS

    tokens = []
    for i in range(1, n + 1):
        surface = rng.choice(_VOCAB)
        if i == 1:
            surface = surface.capitalize()
        elif with_triggers and 1 < i < n and rng.random() < 0.15:
            surface = "and"
        deprel = "root" if heads[i] == 0 else rng.choice(deprels)
        tokens.append(
            Token(index=i, surface=surface, head=heads[i], deprel=deprel,
                  pos=rng.choice(_POS))
        )

    frames = []
    for _ in range(rng.randint(0, 2)):
        pred = rng.randint(1, n)
        arguments = [SrlArgument("V", pred, pred)]
        taken = {pred}
        labels = ["ARG0", "ARG1", "ARG2"]
        if with_triggers and rng.random() < 0.4:
            labels.append("R-ARG1")
        rng.shuffle(labels)
        for label in labels[: rng.randint(0, len(labels))]:
            free = [i for i in range(1, n + 1) if i not in taken]
            if not free:
                break
            start = rng.choice(free)
            end = start
            while end + 1 <= n and end + 1 not in taken and rng.random() < 0.4:
                end += 1
            arguments.append(SrlArgument(label, start, end))
            taken.update(range(start, end + 1))
        frames.append(SrlFrame(predicate_index=pred, arguments=tuple(arguments)))

    return AnnotatedSentence(sentence_id=sentence_id, tokens=tuple(tokens),
                             frames=tuple(frames))
