"""Split and Rephrase toolkit.

Rule-based sentence splitting over dependency + SRL annotations, plus the
evaluation stack used to judge such systems: multi-reference BLEU,
six-criteria rating aggregation, gold-standard gating, crowd-reliability
Beta fits, and BLEU-vs-rating correlation.
"""

__version__ = "0.1.0"

from .annotations import (
    AnnotatedSentence,
    AnnotationError,
    SrlArgument,
    SrlFrame,
    Token,
    load_annotations,
    parse_conllu,
    parse_srl,
    subtree,
)
from .engine import (
    ClauseDraft,
    EngineConfig,
    SplitResult,
    conjunction_handling,
    insertion_handling,
    realize,
    split_and_rephrase,
    wh_handling,
)
from .estimator import RuleBasedSplitter

__all__ = [
    "AnnotatedSentence",
    "AnnotationError",
    "ClauseDraft",
    "EngineConfig",
    "RuleBasedSplitter",
    "SplitResult",
    "SrlArgument",
    "SrlFrame",
    "Token",
    "conjunction_handling",
    "insertion_handling",
    "load_annotations",
    "parse_conllu",
    "parse_srl",
    "realize",
    "split_and_rephrase",
    "subtree",
    "wh_handling",
]
