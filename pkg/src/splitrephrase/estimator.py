"""Scikit-learn style wrapper around the rule-based splitter.

The splitter is stateless (no training data), so fit only validates input;
transform maps annotated sentences to split results. Wrapping it as a
transformer lets it sit inside sklearn pipelines next to vectorizers and
models, and gives get_params/set_params for free.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .annotations import AnnotatedSentence
from .engine import EngineConfig, SplitResult, split_and_rephrase


def check_annotated_sentences(X) -> list[AnnotatedSentence]:
    """Validate that X is a non-string iterable of AnnotatedSentence."""
    if isinstance(X, (str, bytes)) or not hasattr(X, "__iter__"):
        raise TypeError(
            "expected an iterable of AnnotatedSentence, got "
            f"{type(X).__name__}"
        )
    items = list(X)
    for pos, item in enumerate(items):
        if not isinstance(item, AnnotatedSentence):
            raise TypeError(
                f"item {pos} is {type(item).__name__}, expected AnnotatedSentence"
            )
    return items


class RuleBasedSplitter(BaseEstimator, TransformerMixin):
    """Split complex sentences into simpler ones using annotation-driven rules.

    Parameters
    ----------
    minimum_span : int, default=3
        Smallest modifier subtree (in tokens) worth extracting as a sentence.
    copula_insertion : bool, default=True
        Insert "is" when an extracted clause has no verb of its own.
    max_splits : int, default=3
        Global budget of splits per input sentence.

    Examples
    --------
    >>> splitter = RuleBasedSplitter(minimum_span=3)
    >>> results = splitter.fit_transform(sentences)   # doctest: +SKIP
    """

    def __init__(self, minimum_span=3, copula_insertion=True, max_splits=3):
        self.minimum_span = minimum_span
        self.copula_insertion = copula_insertion
        self.max_splits = max_splits

    def _config(self) -> EngineConfig:
        if self.minimum_span < 1:
            raise ValueError(f"minimum_span must be >= 1, got {self.minimum_span}")
        if self.max_splits < 0:
            raise ValueError(f"max_splits must be >= 0, got {self.max_splits}")
        return EngineConfig(
            minimum_span=self.minimum_span,
            copula_insertion=self.copula_insertion,
            max_splits=self.max_splits,
        )

    def fit(self, X, y=None):
        check_annotated_sentences(X)
        self._config()
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> list[SplitResult]:
        sentences = check_annotated_sentences(X)
        config = self._config()
        return [split_and_rephrase(sent, config) for sent in sentences]
