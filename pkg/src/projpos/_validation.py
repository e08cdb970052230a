"""Input validation shared by the estimators and the command line."""

from __future__ import annotations

import numpy as np

from . import linalg
from .spaces import MATRIX, schatten, weighted_lp

KINDS = ("vector", "matrix")


def check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return kind


def check_tolerance(tol):
    tol = float(tol)
    if not (tol >= 0 and np.isfinite(tol)):
        raise ValueError(f"tolerance must be a finite nonnegative number, got {tol}")
    return tol


def check_samples(X, kind):
    """Coerce ``X`` to a stack of elements.

    ``kind="vector"``: a 2-D real array ``(n_samples, n_features)``.
    ``kind="matrix"``: ``(n_samples, n, n)`` hermitian matrices, or a 2-D
    array whose rows are flattened ``n x n`` matrices.
    """
    check_kind(kind)
    a = np.asarray(X)
    if a.size == 0:
        raise ValueError("X is empty")
    if kind == "vector":
        if np.iscomplexobj(a):
            if np.max(np.abs(a.imag)) > linalg.HERMITIAN_ATOL:
                raise ValueError("vector samples must be real")
            a = a.real
        a = np.asarray(a, dtype=float)
        if a.ndim == 1:
            raise ValueError("expected a 2-D array; reshape a single sample with X.reshape(1, -1)")
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("X contains NaN or infinity")
        return a
    if a.ndim == 2:
        n = int(round(np.sqrt(a.shape[1])))
        if n * n != a.shape[1]:
            raise ValueError(f"{a.shape[1]} features do not form a square matrix")
        a = a.reshape(a.shape[0], n, n)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected matrices of shape (n_samples, n, n), got {a.shape}")
    return np.array([linalg.as_hermitian(m) for m in a])


def build_space(kind, p, n_features, weights=None, unit=None):
    """Space descriptor for samples with ``n_features`` coordinates (or matrix size)."""
    if check_kind(kind) == "vector":
        c = np.ones(n_features) if weights is None else np.asarray(weights, dtype=float)
        if c.size != n_features:
            raise ValueError(f"weights have {c.size} entries but X has {n_features} features")
        return weighted_lp(p, c, unit)
    return schatten(p, n_features, unit)


def check_fitted_space(space, samples):
    size = space.dim if space.kind == MATRIX else space.weights.size
    got = samples.shape[1]
    if got != size:
        raise ValueError(f"X has {got} features, but the estimator was fitted with {size}")
