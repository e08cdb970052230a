"""State sets ``S_eps``, the support functional and cone membership.

For a unital space ``(V, e)`` and ``eps >= 1/||e||_p`` the state set is

    S_eps = {y hermitian in the dual : <e, y> = 1, ||y||_q <= eps}

and the projective cone is ``c_eps = {x : <x, S_eps> >= 0}``.  Everything in
this module revolves around the support functional

    m_eps(x) = min <x, S_eps>,

computed by :func:`min_pairing` together with a state attaining it.

Both space families are reduced to one vector problem

    minimize <a, w>  subject to  <b, w> = 1,  ||w||_q <= eps

with unweighted norms.  Weighted vectors use ``a = x c^(1/p)``,
``b = e c^(1/p)``, ``w = y c^(1/q)``.  Matrices with unit ``t I`` are
diagonalized: by von Neumann's trace inequality the minimum of ``tr(x y)``
over a unitary orbit pairs the eigenvalues of ``x`` against those of ``y`` in
opposite order, so ``a`` is the spectrum of ``x``, ``b = t (1, ..., 1)`` and
the minimizer is ``V diag(w) V*`` in the eigenbasis ``V`` of ``x``.

The vector problem has the one-dimensional concave dual

    max_nu  nu - eps ||a - nu b||_p,

which is what the solvers below exploit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import linalg
from .spaces import INF, MATRIX, check_element, feasibility_threshold, inverse

DEFAULT_TOL = 1e-9
BISECTION_ITERS = 200
BRACKET_EXPANSIONS = 2000

MEMBER = "Member"
NOT_MEMBER = "NotMember"
BOUNDARY = "Boundary"


class InfeasibleStateSet(ValueError):
    pass


class BisectionError(ArithmeticError):
    def __init__(self, message, lo, hi):
        super().__init__(f"{message}: bracket [{lo!r}, {hi!r}]")
        self.bracket = (lo, hi)


@dataclass(frozen=True, eq=False)
class StateSetSpec:
    space: object
    eps: float

    def __post_init__(self):
        thr = feasibility_threshold(self.space)
        if not math.isfinite(self.eps) or self.eps < thr - 1e-12:
            raise InfeasibleStateSet(
                f"S_eps is empty for eps={self.eps!r}; the threshold 1/||e|| is {thr!r}"
            )

    @property
    def threshold(self):
        return feasibility_threshold(self.space)


@dataclass(frozen=True, eq=False)
class MembershipCertificate:
    verdict: str
    margin: float
    witness: np.ndarray | None
    tolerance: float

    @property
    def is_member(self):
        return self.verdict != NOT_MEMBER


@dataclass(frozen=True, eq=False)
class StateDecomposition:
    """``y = (1 + s) phi - s psi`` with ``phi, psi`` normalized positive parts."""

    s: float
    phi: np.ndarray
    psi: np.ndarray | None
    defect: float = field(default=0.0)

    def reconstruct(self):
        if self.psi is None:
            return self.phi
        return (1 + self.s) * self.phi - self.s * self.psi


# --- reduction to the vector problem ------------------------------------


class _Reduced:
    """Coordinates in which the state set becomes a plain ``l^q`` problem."""

    def __init__(self, space, x):
        self.space = space
        p = space.p
        if space.kind == MATRIX:
            w, v = np.linalg.eigh(x)
            self.basis = v
            self.a = w
            self.b = np.full(space.dim, space.unit_scale)
        else:
            c = space.weights
            self.basis = None
            self.a = x * c ** inverse(p)
            self.b = space.unit * c ** inverse(p)

    def lift(self, w):
        space = self.space
        if space.kind == MATRIX:
            v = self.basis
            y = (v * w) @ v.conj().T
            return (y + y.conj().T) / 2
        return w * space.weights ** (-inverse(space.q))


def _unit_reduced(space):
    if space.kind == MATRIX:
        return np.full(space.dim, space.unit_scale)
    return space.unit * space.weights ** inverse(space.p)


def _minimal_norm(b, p):
    """Smallest-``q``-norm ``w`` with ``<b, w> = 1`` (Hölder equality case)."""
    mag = np.abs(b)
    sgn = np.sign(b)
    if p == 1.0:
        return sgn / mag.sum()
    if p == INF:
        top = mag.max()
        hit = mag >= top * (1 - 1e-15)
        return np.where(hit, sgn, 0.0) / (hit.sum() * top)
    nb = float(linalg.vector_pnorm(b, p))
    return sgn * (mag / nb) ** (p - 1) / nb


def _lex_smallest(candidates):
    keys = tuple(candidates[:, k] for k in reversed(range(candidates.shape[1])))
    return candidates[np.lexsort(keys)[0]]


def _solve_box(a, b, eps):
    """``q = inf``: continuous knapsack with box ``|w_i| <= eps``.

    The dual ``nu - eps * sum |a_i - nu b_i|`` is concave and piecewise
    linear, so its maximum sits on a breakpoint ``a_i / b_i``.
    Coordinates with ``a_i != nu b_i`` sit at ``-eps sign(a_i - nu b_i)``.
    The rest are filled in index order with the smallest admissible
    value, which gives the lexicographically smallest minimizer.
    """
    nz = b != 0
    nus = a[nz] / b[nz]
    d = a[None, :] - nus[:, None] * b[None, :]
    vals = nus - eps * np.abs(d).sum(axis=1)
    k = int(np.argmax(vals))
    nu = nus[k]
    margin = float(vals[k])
    dk = a - nu * b
    scale = np.abs(a).max() + abs(nu) * np.abs(b).max() + 1e-300
    tie = np.abs(dk) <= 1e-12 * scale
    w = np.where(tie, 0.0, -eps * np.sign(dk))
    need = 1.0 - float(np.dot(b[~tie], w[~tie]))
    idx = np.flatnonzero(tie)
    room = np.abs(b[idx])[::-1].cumsum()[::-1] * eps  # capacity from position k on
    for pos, i in enumerate(idx):
        rest = room[pos + 1] if pos + 1 < len(idx) else 0.0
        bi = b[i]
        if bi == 0:
            w[i] = -eps
            continue
        lo, hi = sorted(((need - rest) / bi, (need + rest) / bi))
        wi = min(max(lo, -eps), eps)
        wi = min(wi, max(hi, -eps))
        w[i] = wi
        need -= bi * wi
    return margin, w


def _solve_cross(a, b, eps):
    """``q = 1``: enumerate vertices of the cross-polytope slice.

    Every vertex of ``{<b, w> = 1} ∩ eps * ball l^1`` lies on an edge
    joining two signed coordinate vertices, so it has at most two nonzero
    entries.
    """
    n = a.size
    cands = []
    vals = []
    scale = np.abs(a).max() * eps + 1e-300
    for i in range(n):
        for s in (1.0, -1.0):
            if abs(s * eps * b[i] - 1.0) <= 1e-12:
                w = np.zeros(n)
                w[i] = s * eps
                cands.append(w)
                vals.append(s * eps * a[i])
    if n > 1:
        ii, jj = np.triu_indices(n, 1)
        for si in (1.0, -1.0):
            for sj in (1.0, -1.0):
                bi, bj = si * b[ii], sj * b[jj]
                den = bj - bi
                ok = np.abs(den) > 1e-300
                theta = np.where(ok, (1.0 / eps - bi) / np.where(ok, den, 1.0), -1.0)
                ok &= (theta >= -1e-15) & (theta <= 1 + 1e-15)
                for i, j, t in zip(ii[ok], jj[ok], np.clip(theta[ok], 0.0, 1.0)):
                    w = np.zeros(n)
                    w[i] = (1 - t) * si * eps
                    w[j] = t * sj * eps
                    cands.append(w)
                    vals.append(float(np.dot(a, w)))
    if not cands:
        raise InfeasibleStateSet("no vertex of the state set found")
    vals = np.array(vals)
    best = vals.min()
    keep = vals <= best + 1e-12 * scale
    w = _lex_smallest(np.array(cands)[keep])
    # the exact dual value at a vertex is its objective value
    return float(best), w


def _grad_point(a, b, nu, eps, p):
    d = a - nu * b
    mag = np.abs(d)
    top = mag.max()
    if top == 0.0:
        return None, 0.0
    r = mag / top
    s = np.sum(r**p) ** (1.0 / p)
    return -eps * np.sign(d) * (r / s) ** (p - 1), top * s


def _solve_smooth(a, b, eps, p):
    """``1 < q < inf``: root finding on the shift ``nu``.

    ``w(nu) = -eps sign(d) |d|^(p-1) / ||d||_p^(p-1)`` with ``d = a - nu b``
    lies on the ``q``-sphere of radius ``eps``; ``<b, w(nu)>`` increases
    with ``nu`` and the root of ``<b, w(nu)> = 1`` is the optimal shift.
    The bracket is expanded geometrically and then shrunk with Brent's
    method (bisection safeguarded by secant steps).
    """

    def h(nu):
        w, _ = _grad_point(a, b, nu, eps, p)
        return float(b @ w) - 1.0

    nz = b != 0
    ratios = a[nz] / b[nz]
    lo, hi = float(ratios.min()) - 1.0, float(ratios.max()) + 1.0
    width = hi - lo
    for _ in range(BRACKET_EXPANSIONS):
        if h(lo) <= 0:
            break
        lo -= width
        width *= 2
    else:
        raise BisectionError("could not bracket the optimal shift from below", lo, hi)
    width = hi - lo
    for _ in range(BRACKET_EXPANSIONS):
        if h(hi) >= 0:
            break
        hi += width
        width *= 2
    else:
        raise BisectionError("could not bracket the optimal shift from above", lo, hi)
    root = optimize.brentq(h, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=BISECTION_ITERS)
    # tighten the bracket around the root for the final mixing step
    delta = 1e-14 * (1.0 + abs(root))
    while delta < hi - lo:
        a_lo, a_hi = max(lo, root - delta), min(hi, root + delta)
        if h(a_lo) <= 0 <= h(a_hi):
            lo, hi = a_lo, a_hi
            break
        delta *= 8
    # Near a zero of a - nu b the map nu -> <b, w(nu)> is steep when p < 2,
    # so mix the two bracket ends: both lie on the eps-sphere, and the
    # convex combination on the hyperplane stays in the ball.
    w_lo, n_lo = _grad_point(a, b, lo, eps, p)
    w_hi, n_hi = _grad_point(a, b, hi, eps, p)
    f_lo, f_hi = float(np.dot(b, w_lo)), float(np.dot(b, w_hi))
    if not f_lo <= 1.0 <= f_hi:
        raise BisectionError("bisection lost its bracket", lo, hi)
    theta = 0.0 if f_hi == f_lo else (1.0 - f_lo) / (f_hi - f_lo)
    w = (1.0 - theta) * w_lo + theta * w_hi
    margin = max(lo - eps * n_lo, hi - eps * n_hi)
    if abs(float(np.dot(a, w)) - margin) > 1e-9 * (1.0 + abs(margin)):
        raise BisectionError("primal and dual values disagree after bisection", lo, hi)
    return margin, w


def solve_reduced(a, b, eps, p):
    """Minimize ``<a, w>`` over ``<b, w> = 1, ||w||_q <= eps``.

    Returns ``(value, w)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    thr = 1.0 / float(linalg.vector_pnorm(b, p))
    w0 = _minimal_norm(b, p)
    bb = float(np.dot(b, b))
    k = float(np.dot(a, b)) / bb
    if np.abs(a - k * b).max() <= 1e-14 * (np.abs(a).max() + 1e-300):
        return k, w0
    if p == 1.0:
        return _solve_box(a, b, eps)
    if p == INF:
        return _solve_cross(a, b, eps)
    if eps <= thr * (1 + 1e-12):
        return float(np.dot(a, w0)), w0
    return _solve_smooth(a, b, eps, p)


# --- public operations ---------------------------------------------------


def minimal_norm_state(space):
    """The state of smallest dual norm; ``e_q`` for the default weighted units."""
    b = _unit_reduced(space)
    w = _minimal_norm(b, space.p)
    if space.kind == MATRIX:
        return np.diag(w).astype(complex)
    return w * space.weights ** (-inverse(space.q))


def min_pairing(spec, x):
    """Support functional ``m_eps(x) = min <x, S_eps>`` and a minimizing state.

    Returns
    -------
    margin : float
    witness : ndarray
        A state ``y`` in ``S_eps`` with ``<x, y> = margin``.
    """
    space = spec.space
    x = check_element(space, x)
    red = _Reduced(space, x)
    value, w = solve_reduced(red.a, red.b, spec.eps, space.p)
    return float(value), red.lift(w)


def eps_norm(spec, x):
    """``||x||_eps = max |<x, S_eps>|``."""
    x = check_element(spec.space, x)
    lo, _ = min_pairing(spec, x)
    neg, _ = min_pairing(spec, -x)
    return max(-lo, -neg)


def cone_member(spec, x, tol=DEFAULT_TOL):
    """Decide ``x in c_eps`` and return a certificate.

    The verdict is ``Member`` when the margin exceeds ``tol``, ``NotMember``
    below ``-tol`` (with the state ``y`` achieving ``<x, y> < 0``) and
    ``Boundary`` in between.
    """
    margin, y = min_pairing(spec, x)
    if margin > tol:
        verdict = MEMBER
    elif margin < -tol:
        verdict = NOT_MEMBER
    else:
        verdict = BOUNDARY
    return MembershipCertificate(verdict, margin, y, tol)


def _unit_pair(space, y):
    if space.kind == MATRIX:
        return space.unit_scale * float(np.trace(y).real)
    return float(np.sum(space.unit * y * space.weights))


def decompose_state(spec, y, tol=1e-9):
    """Write a state as ``(1 + s) phi - s psi`` from its orthogonal parts.

    ``phi`` and ``psi`` are the positive and negative parts of ``y`` scaled
    to ``<e, .> = 1``, and ``s = <e, y_->``.
    """
    space = spec.space
    y = check_element(space, y)
    total = _unit_pair(space, y)
    if abs(total - 1.0) > tol:
        raise ValueError(f"<e, y> = {total!r} is not 1")
    if space.kind == MATRIX:
        y_plus, y_minus = linalg.spectral_parts(y)
    else:
        y_plus, y_minus = np.maximum(y, 0.0), np.maximum(-y, 0.0)
    s = _unit_pair(space, y_minus)
    t = _unit_pair(space, y_plus)
    phi = y_plus / t
    psi = y_minus / s if s > 0 else None
    dec = StateDecomposition(s, phi, psi)
    rec = dec.reconstruct()
    return StateDecomposition(s, phi, psi, float(np.abs(rec - y).max()))


def state_spectrum_check(y, tol=1e-8):
    """Check ``sigma(y) = (1 + r) sigma(z) ∪ (-r) sigma(w)`` for a trace-one state.

    ``z`` and ``w`` are the normalized positive and negative parts of ``y``;
    the spectra of ``z`` and ``w`` are taken on their supports and the
    remaining eigenvalues of ``y`` must vanish.
    """
    y = linalg.as_hermitian(y)
    n = y.shape[0]
    y_plus, y_minus = linalg.spectral_parts(y)
    t = float(np.trace(y_plus).real)
    r = float(np.trace(y_minus).real)
    pieces = []
    if t > 0:
        z = y_plus / t
        pieces.append((1 + r) * _support_spectrum(z))
    if r > 0:
        w = y_minus / r
        pieces.append(-r * _support_spectrum(w))
    predicted = np.concatenate(pieces) if pieces else np.zeros(0)
    if predicted.size > n:
        return False
    predicted = np.sort(np.concatenate([predicted, np.zeros(n - predicted.size)]))
    actual = np.sort(np.linalg.eigvalsh(y))
    return bool(np.max(np.abs(predicted - actual)) <= tol)


def _support_spectrum(a):
    w = np.linalg.eigvalsh(a)
    return w[np.abs(w) > linalg.spectral_threshold(a)]


# --- sampling ------------------------------------------------------------


def _dual_norms(space, ys):
    if space.kind == MATRIX:
        return linalg.schatten_norms(ys, space.q)
    return linalg.vector_pnorm(ys, space.q, space.weights)


def _random_directions(space, count, rng, y0):
    if space.kind == MATRIX:
        n = space.dim
        g = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
        g = (g + np.conj(np.swapaxes(g, 1, 2))) / 2
        tr = space.unit_scale * np.real(np.trace(g, axis1=1, axis2=2))
        d = g - tr[:, None, None] * y0[None]
    else:
        g = rng.standard_normal((count, space.weights.size))
        proj = g @ (space.unit * space.weights)
        d = g - proj[:, None] * y0[None]
    # a one-point hyperplane leaves only round-off, which long steps would amplify
    flat = lambda a: np.abs(a).reshape(count, -1).max(axis=1)
    dead = flat(d) <= 1e-12 * flat(g)
    return np.where(_expand(d, dead), 0.0, d)


def _expand(d, t):
    return t.reshape((-1,) + (1,) * (d.ndim - 1))


def boundary_steps(space, eps, origin, d, iters=48):
    """Largest ``t >= 0`` with ``||origin + t d||_q <= eps`` for each direction.

    ``origin`` must lie in the ``eps``-ball; ``d`` is a stack of directions.
    """
    count = d.shape[0]
    lo = np.zeros(count)
    hi = np.ones(count)
    for _ in range(200):
        out = _dual_norms(space, origin[None] + _expand(d, hi) * d) > eps
        if out.all():
            break
        hi = np.where(out, hi, hi * 2)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        inside = _dual_norms(space, origin[None] + _expand(d, mid) * d) <= eps
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return lo


def sample_state_array(spec, count, rng, boundary_fraction=0.25):
    """Stack of ``count`` states of ``spec`` drawn along random chords.

    Each state is ``y0 + t d`` with ``y0`` the minimal-norm state, ``d`` a
    random direction in the hyperplane ``<e, d> = 0`` and ``t`` uniform on
    the chord up to the boundary (exactly on it for a ``boundary_fraction``
    of the draws).
    """
    space = spec.space
    y0 = minimal_norm_state(space)
    shape = (count,) + y0.shape
    if count == 0:
        return np.zeros(shape, dtype=y0.dtype)
    if space.p != INF and spec.eps <= spec.threshold * (1 + 1e-12):
        return np.broadcast_to(y0, shape).copy()
    d = _random_directions(space, count, rng, y0)
    tmax = boundary_steps(space, spec.eps, y0, d)
    u = rng.uniform(0.0, 1.0, count)
    u = np.where(rng.uniform(0.0, 1.0, count) < boundary_fraction, 1.0, u)
    return y0[None] + _expand(d, u * tmax) * d


def sample_states(spec, count, seed=0):
    """``count`` states of ``S_eps``, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    return list(sample_state_array(spec, count, rng))


def pair_many(space, x, ys):
    """``<x, y_k>`` for a stack of dual elements."""
    if space.kind == MATRIX:
        return np.real(np.einsum("ij,kji->k", x, ys))
    return ys @ (x * space.weights)
