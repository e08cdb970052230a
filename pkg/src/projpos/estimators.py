"""scikit-learn style wrappers around the cone membership test.

The estimators are unsupervised in substance: ``fit`` only fixes the space
from the shape of ``X``.  They follow the scikit-learn conventions
(constructor parameters stored verbatim, fitted attributes ending in ``_``)
so they compose with pipelines and ``clone``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import _validation as v
from .states import DEFAULT_TOL, StateSetSpec, eps_norm, min_pairing


class _ConeBase(BaseEstimator):
    def __init__(self, kind="vector", p=2.0, eps=1.0, weights=None, unit=None):
        self.kind = kind
        self.p = p
        self.eps = eps
        self.weights = weights
        self.unit = unit

    def _fit_space(self, X):
        samples = v.check_samples(X, self.kind)
        space = v.build_space(self.kind, self.p, samples.shape[1], self.weights, self.unit)
        self.spec_ = StateSetSpec(space, float(self.eps))
        self.threshold_ = self.spec_.threshold
        self.n_features_in_ = samples.shape[1]
        return samples

    def _samples(self, X):
        check_is_fitted(self, "spec_")
        samples = v.check_samples(X, self.kind)
        v.check_fitted_space(self.spec_.space, samples)
        return samples


class ProjectiveConeClassifier(ClassifierMixin, _ConeBase):
    """Label samples by membership in the projective cone ``c_eps``.

    ``predict`` returns ``1`` for members (margin ``>= -tol``) and ``0``
    otherwise; ``decision_function`` returns the margin ``m_eps(x)``.

    Parameters
    ----------
    kind : {"vector", "matrix"}
        Weighted ``l^p`` vectors or hermitian matrices with a Schatten norm.
    p : float or "inf"
        Exponent of the primal norm.
    eps : float
        Radius of the state set; at least ``1/||e||_p``.
    weights, unit : array_like, optional
        Weights and unit of a vector space (unit scale ``t`` of ``t I``
        for matrices).
    tol : float
        Margins in ``[-tol, tol]`` count as members.
    """

    def __init__(self, kind="vector", p=2.0, eps=1.0, weights=None, unit=None, tol=DEFAULT_TOL):
        super().__init__(kind=kind, p=p, eps=eps, weights=weights, unit=unit)
        self.tol = tol

    def fit(self, X, y=None):
        v.check_tolerance(self.tol)
        self._fit_space(X)
        self.classes_ = np.array([0, 1])
        return self

    def decision_function(self, X):
        samples = self._samples(X)
        return np.array([min_pairing(self.spec_, x)[0] for x in samples])

    def predict(self, X):
        return (self.decision_function(X) >= -self.tol).astype(int)

    def witnesses(self, X):
        """A minimizing state for every sample."""
        samples = self._samples(X)
        return [min_pairing(self.spec_, x)[1] for x in samples]


class EpsNormTransformer(TransformerMixin, _ConeBase):
    """Map samples to ``[m_eps(x), ||x||_eps]``.

    ``m_eps`` is the support functional of the state set and ``||x||_eps``
    the equivalent norm ``max |<x, S_eps>|``.
    """

    def fit(self, X, y=None):
        self._fit_space(X)
        return self

    def transform(self, X):
        samples = self._samples(X)
        out = np.empty((len(samples), 2))
        for i, x in enumerate(samples):
            out[i, 0] = min_pairing(self.spec_, x)[0]
            out[i, 1] = eps_norm(self.spec_, x)
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["margin", "eps_norm"], dtype=object)
