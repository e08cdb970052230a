"""Brute-force estimates of the support functional, independent of the KKT solvers.

The estimates only ever evaluate ``<x, y>`` at explicit states ``y`` of
``S_eps``, so they are upper bounds for ``m_eps(x)``.
"""

from __future__ import annotations

import numpy as np

from . import linalg

from .spaces import INF, MATRIX, _attain_values, check_element
from .states import (
    _dual_norms,
    _expand,
    _random_directions,
    boundary_steps,
    minimal_norm_state,
    pair_many,
    sample_state_array,
)

REFINE_STEPS = 200
STEP_DECAY = 0.7
STEP_GROWTH = 1.5
DIRECTIONS_PER_STEP = 8
ELLIPSOID_MAX_DIM = 64
ELLIPSOID_MAX_ITERS = 20_000


def _flat_norms(d):
    return np.sqrt(np.sum(np.abs(d.reshape(d.shape[0], -1)) ** 2, axis=1))


def _unit_complement(space, x, y0):
    """``x`` minus its component along the unit, as a hyperplane direction."""
    if space.kind == MATRIX:
        e = space.unit
        k = np.real(np.trace(x @ e)) / np.real(np.trace(e @ e))
        d = x - k * e
        return d - space.unit_scale * np.real(np.trace(d)) * y0
    c = space.weights
    d = x - np.dot(x * c, space.unit) / np.dot(space.unit * c, space.unit) * space.unit
    return d - np.dot(d, space.unit * c) * y0


def oracle_min_pairing(spec, x, budget=10_000, seed=0, steps=REFINE_STEPS, polish=True):
    """Upper estimate of ``m_eps(x)`` from sampling plus local search.

    The best of ``budget`` sampled states is refined by a shrinking-step
    search.  Each step tries the projected descent direction and a few
    random hyperplane directions; every trial point is pushed along the ray
    from the minimal-norm state ``y0`` until the ``q``-ball constraint binds.
    Only improvements are accepted and the step shrinks by ``0.7`` on
    rejection.  With ``polish`` the result is finally improved by
    :func:`ellipsoid_min_pairing`.
    """
    space = spec.space
    x = check_element(space, x)
    rng = np.random.default_rng(seed)
    y0 = minimal_norm_state(space)
    f0 = float(pair_many(space, x, y0[None])[0])
    if space.p != INF and spec.eps <= spec.threshold * (1 + 1e-12):
        return f0
    ys = sample_state_array(spec, budget, rng)
    vals = pair_many(space, x, ys)
    k = int(np.argmin(vals))
    y, best = ys[k], float(vals[k])
    if f0 < best:
        y, best = y0, f0
    spread = _flat_norms(ys - y0[None])
    h0 = float(spread.max()) if spread.size else 1.0
    if h0 == 0.0:
        return best
    h = 0.5 * h0
    descent = -_unit_complement(space, x, y0)
    dn = _flat_norms(descent[None])[0]
    for _ in range(steps):
        d = _random_directions(space, DIRECTIONS_PER_STEP, rng, y0)
        if dn > 0:
            d[0] = descent
        d = d / _expand(d, _flat_norms(d))
        trial = y[None] + h * d
        ray = trial - y0[None]
        # keep rays on the hyperplane; long retractions amplify round-off
        ray = ray - _expand(ray, pair_many(space, space.unit, ray)) * y0[None]
        lam = boundary_steps(space, spec.eps, y0, ray)
        f_trial = pair_many(space, x, trial)
        lam = np.where(f_trial < f0, lam, np.minimum(lam, 1.0))
        cand = y0[None] + _expand(ray, lam) * ray
        fc = pair_many(space, x, cand)
        j = int(np.argmin(fc))
        if fc[j] < best:
            y, best = cand[j], float(fc[j])
            h = min(h * STEP_GROWTH, h0)
        else:
            h *= STEP_DECAY
        if h < 1e-13 * h0:
            break
    if polish:
        best = min(best, ellipsoid_min_pairing(spec, x))
    return best


def _hyperplane_frame(space):
    """Minimal-norm state and an orthonormal basis of ``{d : <e, d> = 0}``."""
    y0 = minimal_norm_state(space)
    normal = space.unit * space.weights
    n = normal.size
    q, _ = np.linalg.qr(np.column_stack([normal, np.eye(n)]))
    return y0, q[:, 1:n]


def oracle_grid_min(spec, x, pitch=1e-3):
    """Minimum of ``<x, y>`` over a square grid of pitch ``pitch`` on the
    hyperplane ``<e, y> = 1`` clipped to the ``eps``-ball (vector spaces,
    ``n <= 3``).

    The grid is centred on the minimal-norm state, which is always
    feasible, so the result is a valid upper bound for ``m_eps(x)``.
    """
    space = spec.space
    if space.kind == MATRIX:
        raise ValueError("oracle_grid_min handles weighted vector spaces only")
    n = space.weights.size
    if n > 3:
        raise ValueError(f"oracle_grid_min needs n <= 3, got {n}")
    x = check_element(space, x)
    y0, basis = _hyperplane_frame(space)
    best = float(np.sum(x * y0 * space.weights))
    if n == 1:
        return best
    c = space.weights
    q_inv = 0.0 if space.q == INF else 1.0 / space.q
    radius = float(np.sqrt(np.sum((spec.eps * c ** (-q_inv)) ** 2))) + float(np.linalg.norm(y0))
    ticks = np.arange(-radius, radius + pitch, pitch)
    obj = x * c
    rows = [None] if n == 2 else ticks
    for t1 in rows:
        t = ticks[:, None] if t1 is None else np.column_stack([np.full(ticks.size, t1), ticks])
        ys = y0[None] + t @ basis.T
        ok = _dual_norms(space, ys) <= spec.eps
        if ok.any():
            best = min(best, float((ys[ok] @ obj).min()))
    return best


def hyperplane_basis(space):
    """Directions ``B_k`` spanning ``{d : <e, d> = 0}``, orthonormal for the
    plain entrywise inner product.

    Returns the stack ``B`` and the real matrix ``M`` with
    ``<g, B_k> = M[k] . flat(g)`` for primal elements ``g``.
    """
    if space.kind == MATRIX:
        n = space.dim
        diag, _ = np.linalg.qr(np.column_stack([np.ones(n), np.eye(n)]))
        mats = [np.diag(diag[:, k]).astype(complex) for k in range(1, n)]
        r = 1 / np.sqrt(2)
        for j in range(n):
            for k in range(j + 1, n):
                m = np.zeros((n, n), dtype=complex)
                m[j, k] = m[k, j] = r
                mats.append(m)
                m = np.zeros((n, n), dtype=complex)
                m[j, k], m[k, j] = -1j * r, 1j * r
                mats.append(m)
        basis = np.array(mats).reshape(len(mats), n, n)
        flat = basis.reshape(len(mats), -1)
        # tr(g B) = Re <g, B>_F for hermitian g and B
        return basis, np.concatenate([flat.real, flat.imag], axis=1)
    normal = space.unit * space.weights
    n = normal.size
    q, _ = np.linalg.qr(np.column_stack([normal, np.eye(n)]))
    basis = q[:, 1:n].T.copy()
    return basis, basis * space.weights[None]


def _flatten(space, g):
    if space.kind == MATRIX:
        f = g.ravel()
        return np.concatenate([f.real, f.imag])
    return g


def _norm_subgradient(space, y):
    """``||y||_q`` and a primal ``g`` with ``<g, y> = ||y||_q``, ``||g||_p = 1``."""
    if space.kind == MATRIX:
        w, u = np.linalg.eigh(y)
        value = float(np.abs(w).max()) if space.q == INF else float(
            np.sum(np.abs(w) ** space.q) ** (1 / space.q)
        )
        g = (u * _attain_values(w, space.q)) @ u.conj().T
        return value, g
    value = float(linalg.vector_pnorm(y, space.q, space.weights))
    return value, _attain_values(y, space.q, space.weights)


def ellipsoid_min_pairing(spec, x, max_iters=ELLIPSOID_MAX_ITERS, rtol=1e-12):
    """Upper estimate of ``m_eps(x)`` by the central-cut ellipsoid method.

    Works in coordinates of the hyperplane ``<e, y> = 1`` around the
    minimal-norm state.  Infeasible centres are cut with a subgradient of
    the ``q``-norm; feasible centres are recorded and cut with the
    objective.  Only feasible centres contribute to the returned value.
    Spaces whose hyperplane has more than 64 dimensions are skipped.
    """
    space = spec.space
    x = check_element(space, x)
    eps = spec.eps
    y0 = minimal_norm_state(space)
    best = float(pair_many(space, x, y0[None])[0])
    basis, cut_rows = hyperplane_basis(space)
    dim = basis.shape[0]
    if dim == 0 or dim > ELLIPSOID_MAX_DIM:
        return best
    objective = pair_many(space, x, basis)
    if space.kind == MATRIX:
        radius = eps * np.sqrt(space.dim) + float(np.linalg.norm(y0))
    else:
        c = space.weights
        q_inv = 0.0 if space.q == INF else 1.0 / space.q
        radius = float(np.linalg.norm(eps * c ** (-q_inv))) + float(np.linalg.norm(y0))
    radius *= 1.01
    if dim == 1:
        return min(best, _segment_min(space, eps, x, y0, basis[0], radius))
    center = np.zeros(dim)
    shape = radius**2 * np.eye(dim)
    scale = dim * dim / (dim * dim - 1.0)
    iters = min(max_iters, int(40 * (dim + 1) ** 2))
    for _ in range(iters):
        y = y0 + np.tensordot(center, basis, axes=1)
        value, g = _norm_subgradient(space, y)
        if value <= eps:
            best = min(best, float(pair_many(space, x, y[None])[0]))
            cut = objective
        else:
            cut = cut_rows @ _flatten(space, g)
        pg = shape @ cut
        gpg = float(cut @ pg)
        if gpg <= (rtol * radius) ** 2 * float(cut @ cut):
            break
        step = pg / np.sqrt(gpg)
        center = center - step / (dim + 1)
        shape = scale * (shape - (2.0 / (dim + 1)) * np.outer(step, step))
        shape = (shape + shape.T) / 2
    return best


def _segment_min(space, eps, x, y0, direction, radius):
    """One-dimensional case: the state set is a segment through ``y0``."""
    ends = []
    for sgn in (1.0, -1.0):
        d = (sgn * direction)[None]
        t = boundary_steps(space, eps, y0, d)[0]
        ends.append(y0 + t * d[0])
    return float(pair_many(space, x, np.array(ends)).min())
