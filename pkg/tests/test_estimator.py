import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from splitrephrase.engine import SplitResult
from splitrephrase.estimator import RuleBasedSplitter, check_annotated_sentences


def test_fit_transform_on_fixtures(golden_sentences):
    sentences = list(golden_sentences.values())
    splitter = RuleBasedSplitter()
    results = splitter.fit_transform(sentences)
    assert len(results) == len(sentences)
    assert all(isinstance(r, SplitResult) for r in results)


def test_get_set_params_roundtrip():
    splitter = RuleBasedSplitter(minimum_span=4, copula_insertion=False)
    params = splitter.get_params()
    assert params == {
        "minimum_span": 4,
        "copula_insertion": False,
        "max_splits": 3,
    }
    splitter.set_params(minimum_span=2)
    assert splitter.minimum_span == 2


def test_clone_preserves_params(golden_sentences):
    splitter = RuleBasedSplitter(minimum_span=5).fit(list(golden_sentences.values()))
    cloned = clone(splitter)
    assert cloned.get_params()["minimum_span"] == 5


def test_parameters_change_behavior(golden_sentences):
    sent = golden_sentences["alderney"]
    default = RuleBasedSplitter().fit_transform([sent])[0]
    strict = RuleBasedSplitter(minimum_span=6).fit_transform([sent])[0]
    assert default.changed
    assert not strict.changed


def test_max_splits_zero_is_identity(golden_sentences):
    sent = golden_sentences["kaguya"]
    result = RuleBasedSplitter(max_splits=0).fit_transform([sent])[0]
    assert not result.changed
    assert len(result.sentences) == 1


def test_input_validation():
    with pytest.raises(TypeError):
        check_annotated_sentences("not a list")
    with pytest.raises(TypeError):
        check_annotated_sentences([object()])
    with pytest.raises(ValueError):
        RuleBasedSplitter(minimum_span=0).fit([])


def test_works_inside_pipeline(golden_sentences):
    pipeline = Pipeline([("split", RuleBasedSplitter())])
    results = pipeline.fit_transform(list(golden_sentences.values()))
    assert len(results) == len(golden_sentences)
