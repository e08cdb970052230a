from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from projpos.estimators import EpsNormTransformer, ProjectiveConeClassifier


def test_get_params_and_clone():
    clf = ProjectiveConeClassifier(p=3.0, eps=1.5, tol=1e-6)
    params = clf.get_params()
    assert params == {"kind": "vector", "p": 3.0, "eps": 1.5, "weights": None, "unit": None, "tol": 1e-6}
    other = clone(clf)
    assert other.get_params() == params and other is not clf
    clf.set_params(eps=2.0)
    assert clf.eps == 2.0


def test_vector_classifier_matches_quadrant():
    rng = np.random.default_rng(0)
    X = rng.standard_normal((200, 2))
    clf = ProjectiveConeClassifier(p=2.0, eps=2 ** 0.5).fit(X)
    assert clf.n_features_in_ == 2 and clf.threshold_ == pytest.approx(1.0)
    assert np.array_equal(clf.predict(X), np.all(X >= 0, axis=1).astype(int))
    assert clf.decision_function(X).shape == (200,)
    assert clf.score(X, np.all(X >= 0, axis=1).astype(int)) == 1.0


def test_matrix_classifier_flat_and_stacked():
    X = np.array([np.diag([2.0, 0.0, 1.0]), np.eye(3)])
    clf = ProjectiveConeClassifier(kind="matrix", p=1, eps=1.0).fit(X)
    assert list(clf.predict(X)) == [0, 1]
    assert list(clf.predict(X.reshape(2, 9))) == [0, 1]
    w = clf.witnesses(X[:1])[0]
    assert np.allclose(w, np.diag([-1.0, 1.0, 1.0]))


def test_transformer_outputs_margin_and_norm():
    X = np.array([[1.0, 1.0], [3.0, 1.0]])
    tr = EpsNormTransformer(p="inf", eps=2.0, unit=[1, 1])
    out = tr.fit_transform(X)
    assert out[0] == pytest.approx([1.0, 1.0])
    assert out[1, 0] == pytest.approx(0.0, abs=1e-12)
    assert list(tr.get_feature_names_out()) == ["margin", "eps_norm"]


def test_pipeline():
    pipe = make_pipeline(FunctionTransformer(np.abs), ProjectiveConeClassifier(p=1.0, eps=2.0))
    X = np.random.default_rng(1).standard_normal((20, 2))
    assert pipe.fit(X).predict(X).tolist() == [1] * 20


def test_validation_errors():
    with pytest.raises(NotFittedError):
        ProjectiveConeClassifier().predict(np.ones((1, 2)))
    clf = ProjectiveConeClassifier().fit(np.ones((3, 2)))
    with pytest.raises(ValueError, match="features"):
        clf.predict(np.ones((1, 3)))
    with pytest.raises(ValueError, match="2-D"):
        clf.predict(np.ones(2))
    with pytest.raises(ValueError):
        ProjectiveConeClassifier(kind="tensor").fit(np.ones((1, 2)))
    with pytest.raises(ValueError):
        ProjectiveConeClassifier(tol=-1).fit(np.ones((1, 2)))
    with pytest.raises(ValueError):
        ProjectiveConeClassifier(eps=0.1).fit(np.ones((1, 2)))
    with pytest.raises(ValueError, match="NaN"):
        ProjectiveConeClassifier().fit(np.array([[np.nan, 1.0]]))
    with pytest.raises(ValueError, match="square"):
        ProjectiveConeClassifier(kind="matrix").fit(np.ones((2, 3)))
    with pytest.raises(ValueError, match="weights"):
        ProjectiveConeClassifier(weights=[1, 2, 3]).fit(np.ones((2, 2)))


def test_weights_and_unit_are_used():
    X = np.array([[1.0, -0.2]])
    plain = ProjectiveConeClassifier(p=1, eps=2.0).fit(X).decision_function(X)
    weighted = ProjectiveConeClassifier(p=1, eps=2.0, weights=[1, 3]).fit(X).decision_function(X)
    assert plain[0] != pytest.approx(weighted[0])
