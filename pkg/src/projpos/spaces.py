"""Finite-dimensional unital *-normed spaces.

Two families are modelled:

* ``weighted_vector``: real vectors with ``||x||_p = (sum |x_j|^p c_j)^(1/p)``
  and the pairing ``<x, y> = sum x_j y_j c_j`` against the dual ``l^q(c)``;
* ``matrix``: hermitian ``n x n`` matrices with the Schatten ``p``-norm and
  the trace pairing ``<x, y> = tr(x y)``.

Only hermitian elements are represented; complex elements carry no extra
information for the cones and state spaces built on top of these spaces.
Exponents are floats and ``math.inf`` stands for infinity (``1 / inf`` is
exactly ``0.0``, so conjugacy at the extremes is exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg

WEIGHTED_VECTOR = "weighted_vector"
MATRIX = "matrix"
INF = math.inf


def check_exponent(p):
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        try:
            p = float(p)
        except ValueError:
            raise ValueError(f"cannot parse exponent {p!r}") from None
    p = float(p)
    if math.isnan(p) or p < 1:
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    return p


def conjugate_exponent(p):
    """Return ``q`` with ``1/p + 1/q = 1``; ``1 <-> inf`` exactly."""
    p = check_exponent(p)
    if p == 1.0:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


def inverse(p):
    """``1/p`` with ``1/inf = 0``."""
    return 0.0 if p == INF else 1.0 / p


@dataclass(frozen=True, eq=False)
class SpaceDescriptor:
    """A unital *-normed space ``(V, e)``.

    Build instances with :func:`weighted_lp` or :func:`schatten` rather than
    directly; they fill in the default unit and validate the data.
    """

    kind: str
    p: float
    unit: np.ndarray
    weights: np.ndarray | None = None
    dim: int | None = None

    @property
    def q(self):
        return conjugate_exponent(self.p)

    @property
    def size(self):
        return self.dim if self.kind == MATRIX else len(self.weights)

    @property
    def unit_scale(self):
        """The ``t`` in ``e = t * I`` for matrix spaces."""
        if self.kind != MATRIX:
            raise AttributeError("unit_scale is defined for matrix spaces only")
        return float(self.unit[0, 0].real)

    def __repr__(self):
        if self.kind == MATRIX:
            return f"SpaceDescriptor(matrix, p={self.p}, dim={self.dim}, unit={self.unit_scale}*I)"
        return (
            f"SpaceDescriptor(weighted_vector, p={self.p}, weights={self.weights.tolist()}, "
            f"unit={self.unit.tolist()})"
        )

    def to_dict(self):
        p = "inf" if self.p == INF else self.p
        if self.kind == MATRIX:
            return {"kind": MATRIX, "p": p, "dim": self.dim, "unit_scale": self.unit_scale}
        return {
            "kind": WEIGHTED_VECTOR,
            "p": p,
            "weights": self.weights.tolist(),
            "unit": self.unit.tolist(),
        }


def weighted_lp(p, weights, unit=None):
    """``l^p(c)`` with unit ``unit``.

    The default unit is ``(sum c)^(-1/p) * (1, ..., 1)``, which has norm one
    (``(1, ..., 1)`` when ``p = inf``).
    """
    p = check_exponent(p)
    c = np.array(weights, dtype=float).ravel()
    if c.size == 0:
        raise ValueError("weights must be non-empty")
    if not np.all(np.isfinite(c)) or np.any(c <= 0):
        raise ValueError("weights must be finite and strictly positive")
    if unit is None:
        e = np.full(c.size, c.sum() ** (-inverse(p)))
    else:
        e = np.array(unit, dtype=float).ravel()
        if e.shape != c.shape:
            raise ValueError(f"unit has {e.size} entries, expected {c.size}")
        if not np.all(np.isfinite(e)):
            raise ValueError("unit has non-finite entries")
    if not np.any(e != 0):
        raise ValueError("unit must be nonzero")
    return SpaceDescriptor(WEIGHTED_VECTOR, p, e, weights=c)


def schatten(p, n, unit=None):
    """The Schatten class ``S_p`` on ``M_n`` with unit ``unit``.

    ``unit`` may be ``None`` (identity), a positive scalar ``t`` meaning
    ``t * I``, or a matrix that must equal a positive multiple of ``I``.
    """
    p = check_exponent(p)
    n = int(n)
    if not 1 <= n <= linalg.MAX_DIM:
        raise ValueError(f"matrix dimension {n} outside [1, {linalg.MAX_DIM}]")
    if unit is None:
        t = 1.0
    elif np.ndim(unit) == 0:
        t = float(unit)
    else:
        m = linalg.as_hermitian(unit)
        if m.shape != (n, n):
            raise ValueError(f"unit has shape {m.shape}, expected {(n, n)}")
        t = float(m[0, 0].real)
        if np.max(np.abs(m - t * np.eye(n))) > 1e-12:
            raise ValueError("matrix units must be positive multiples of the identity")
    if not t > 0 or not math.isfinite(t):
        raise ValueError(f"unit scale must be positive, got {t}")
    return SpaceDescriptor(MATRIX, p, t * np.eye(n, dtype=complex), dim=n)


def check_element(space, x):
    """Coerce ``x`` to an element of ``space`` (real vector or hermitian matrix)."""
    if space.kind == MATRIX:
        m = linalg.as_hermitian(x)
        if m.shape != (space.dim, space.dim):
            raise ValueError(f"element has shape {m.shape}, expected {(space.dim, space.dim)}")
        return m
    v = np.array(x, dtype=float).ravel() if np.isrealobj(x) else _real_vector(x)
    if v.shape != space.weights.shape:
        raise ValueError(f"element has {v.size} entries, expected {space.weights.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("element has non-finite entries")
    return v


def _real_vector(x):
    z = np.asarray(x)
    if np.max(np.abs(z.imag)) > linalg.HERMITIAN_ATOL:
        raise ValueError("vector elements must be real (hermitian)")
    return np.array(z.real, dtype=float).ravel()


def norm(space, x):
    """Primal norm ``||x||_p`` of an element of ``space``."""
    x = check_element(space, x)
    if space.kind == MATRIX:
        return linalg.schatten_norm(x, space.p)
    return float(linalg.vector_pnorm(x, space.p, space.weights))


def dual_norm(space, y):
    """Norm ``||y||_q`` of a dual element, ``q`` conjugate to ``space.p``."""
    y = check_element(space, y)
    if space.kind == MATRIX:
        return linalg.schatten_norm(y, space.q)
    return float(linalg.vector_pnorm(y, space.q, space.weights))


def pair(space, x, y):
    """Duality ``<x, y>``: ``sum x_i y_i c_i`` or ``tr(x y)``."""
    x = check_element(space, x)
    y = check_element(space, y)
    if space.kind == MATRIX:
        return float(np.real(np.sum(x * y.T)))
    return float(np.sum(x * y * space.weights))


def unit_norm(space):
    if space.kind == MATRIX:
        return space.unit_scale * space.dim ** inverse(space.p)
    return float(linalg.vector_pnorm(space.unit, space.p, space.weights))


def feasibility_threshold(space):
    """``1 / ||e||_p``: the smallest ``eps`` for which ``S_eps`` is non-empty.

    By Hölder duality ``min{||y||_q : <e, y> = 1} = 1 / ||e||_p``.
    """
    return 1.0 / unit_norm(space)


def zero(space):
    if space.kind == MATRIX:
        return np.zeros((space.dim, space.dim), dtype=complex)
    return np.zeros(space.weights.size)


def space_from_dict(data):
    """Inverse of :meth:`SpaceDescriptor.to_dict` (also accepts the CLI format)."""
    kind = data.get("kind")
    if "p" not in data:
        raise ValueError("space is missing field 'p'")
    if kind == WEIGHTED_VECTOR:
        if "weights" not in data:
            raise ValueError("weighted_vector space is missing field 'weights'")
        return weighted_lp(data["p"], data["weights"], data.get("unit"))
    if kind == MATRIX:
        if "dim" not in data:
            raise ValueError("matrix space is missing field 'dim'")
        unit = data.get("unit", data.get("unit_scale"))
        if unit == "identity":
            unit = None
        return schatten(data["p"], data["dim"], unit)
    raise ValueError(f"unknown space kind {kind!r}")


def _attain_values(v, r, weights=None):
    """``w`` with ``||w||_s = 1`` and ``sum v w c = ||v||_r`` (``s`` conjugate to ``r``)."""
    c = np.ones_like(v) if weights is None else weights
    mag = np.abs(v)
    if not np.any(mag > 0):
        # any unit vector attains the value 0
        out = np.zeros_like(v)
        s = conjugate_exponent(r)
        out[0] = 1.0 if s == INF else c[0] ** (-1.0 / s)
        return out
    if r == 1.0:
        return np.sign(v)
    if r == INF:
        k = int(np.argmax(mag))
        out = np.zeros_like(v)
        out[k] = np.sign(v[k]) / c[k]
        return out
    nv = float(linalg.vector_pnorm(v, r, c))
    return np.sign(v) * (mag / nv) ** (r - 1)


def norm_attainer(space, v, dual=False):
    """Element of the unit ball on the other side of the pairing attaining ``||v||``.

    With ``dual=False`` ``v`` is a primal element and the result ``y``
    satisfies ``||y||_q = 1`` and ``<v, y> = ||v||_p``.  With ``dual=True``
    the roles of ``p`` and ``q`` swap.  The result is also a subgradient of
    the norm at ``v`` with respect to the pairing.
    """
    v = check_element(space, v)
    r = space.q if dual else space.p
    if space.kind == MATRIX:
        w, u = np.linalg.eigh(v)
        g = _attain_values(w, r)
        out = (u * g) @ u.conj().T
        return (out + out.conj().T) / 2
    return _attain_values(v, r, space.weights)
