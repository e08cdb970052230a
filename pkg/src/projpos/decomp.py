"""Orthogonal expansions of hermitian functionals on matrix algebras.

A hermitian functional on ``M_n`` is represented by its trace density
``mu`` (``y -> tr(mu y)``); its norm is the trace norm ``||mu||_1``.  An
orthogonal expansion is ``mu = mu_+ - mu_-`` with positive parts whose norms
add up.  On ``M_n`` the spectral split is the only one.  The ``M_4``
fixture below is an operator system where the expansion is not unique.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

POSITIVE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OrthogonalExpansion:
    mu_plus: np.ndarray
    mu_minus: np.ndarray
    defect: float

    @property
    def product_norm(self):
        """``||mu_+ mu_-||_F``; zero for the spectral split."""
        return linalg.frobenius(self.mu_plus @ self.mu_minus)


class NotOrthogonal(ValueError):
    def __init__(self, plus_pairing, minus_pairing, eps_w):
        super().__init__(
            f"no witness below {eps_w:g}: tr(mu_+(e - y)) = {plus_pairing:.3e}, "
            f"tr(mu_- y) = {minus_pairing:.3e}"
        )
        self.pairings = (plus_pairing, minus_pairing)


def trace_norm(mu):
    return linalg.schatten_norm(mu, 1)


def additivity_defect(mu_plus, mu_minus):
    """``| ||mu_+ - mu_-||_1 - ||mu_+||_1 - ||mu_-||_1 |``."""
    mu_plus = linalg.as_hermitian(mu_plus)
    mu_minus = linalg.as_hermitian(mu_minus)
    return abs(trace_norm(mu_plus - mu_minus) - trace_norm(mu_plus) - trace_norm(mu_minus))


def orthogonal_expansion(mu):
    """Spectral expansion ``mu = mu_+ - mu_-`` with its additivity defect."""
    mu_plus, mu_minus = linalg.spectral_parts(mu)
    return OrthogonalExpansion(mu_plus, mu_minus, additivity_defect(mu_plus, mu_minus))


def orthogonality_witness(mu_plus, mu_minus, eps_w=1e-8):
    """Projection ``0 <= y <= e`` with ``tr(mu_+(e - y)) < eps_w`` and ``tr(mu_- y) < eps_w``.

    ``y`` is the spectral projection onto the positive part of
    ``mu_+ - mu_-``.  Raises :class:`NotOrthogonal` when either pairing is
    too large, which rules out ``(mu_+, mu_-)`` as an orthogonal expansion.
    """
    mu_plus = linalg.as_hermitian(mu_plus)
    mu_minus = linalg.as_hermitian(mu_minus)
    diff = mu_plus - mu_minus
    w, u = linalg.eigh(diff)
    keep = w > linalg.spectral_threshold(diff)
    y = (u[:, keep]) @ u[:, keep].conj().T
    n = y.shape[0]
    plus = float(np.trace(mu_plus @ (np.eye(n) - y)).real)
    minus = float(np.trace(mu_minus @ y).real)
    if not (plus < eps_w and minus < eps_w):
        raise NotOrthogonal(plus, minus, eps_w)
    return (y + y.conj().T) / 2


def positive_via_norm(mu, tol=POSITIVE_TOL):
    """``mu >= 0`` decided by ``||mu||_1 = tr(mu)`` (relative tolerance ``tol``)."""
    mu = linalg.as_hermitian(mu)
    norm1 = trace_norm(mu)
    return abs(norm1 - float(np.trace(mu).real)) <= tol * (1.0 + norm1)


def positive_via_eigenvalues(mu, floor=linalg.PSD_FLOOR):
    return linalg.is_psd(mu, floor)


# --- the M_4 fixture -------------------------------------------------------


def _e(i, j):
    m = np.zeros((4, 4), dtype=complex)
    m[i, j] = 1.0
    return m


class M4Fixture:
    """The operator system ``V = {v(lam, theta, a, b)} ⊂ M_4`` where

        v = [[lam, a], [b, lam]] ⊕ [[theta, a], [b, theta]].

    Hermitian elements have real ``lam, theta`` and ``b = conj(a)``; their
    operator norm is ``max(|lam|, |theta|) + |a|``.  The functionals are
    given by trace densities:

    * ``mu1(v) = lam``, ``mu2(v) = theta``;
    * ``tau1(v) = lam + (a + b)/2``, ``tau2(v) = theta + (a + b)/2``,

    so ``tau_i`` equals ``lam + Re a`` (resp. ``theta + Re a``) on hermitian
    elements.  ``mu1 - mu2 = tau1 - tau2`` on ``V``, giving two distinct
    orthogonal expansions of the same functional.
    """

    densities = {
        "mu1": _e(0, 0),
        "mu2": _e(2, 2),
        "tau1": _e(0, 0) + (_e(0, 1) + _e(1, 0)) / 2,
        "tau2": _e(2, 2) + (_e(0, 1) + _e(1, 0)) / 2,
    }
    expansions = (("mu1", "mu2"), ("tau1", "tau2"))

    @staticmethod
    def element(lam, theta, a=0.0, b=None):
        b = np.conj(a) if b is None else b
        v = np.zeros((4, 4), dtype=complex)
        v[0, 0] = v[1, 1] = lam
        v[2, 2] = v[3, 3] = theta
        v[0, 1] = v[2, 3] = a
        v[1, 0] = v[3, 2] = b
        return v

    @staticmethod
    def is_positive(lam, theta, a):
        """Closed form: ``v >= 0`` iff ``|a| <= lam`` and ``|a| <= theta``."""
        return abs(a) <= lam + 1e-12 and abs(a) <= theta + 1e-12

    @classmethod
    def evaluate(cls, name, lam, theta, a):
        """``tr(v F)`` for the density ``F`` of functional ``name``; vectorized."""
        f = cls.densities[name]
        lam, theta, a = np.broadcast_arrays(lam, theta, np.asarray(a, dtype=complex))
        val = (
            lam * (f[0, 0] + f[1, 1])
            + theta * (f[2, 2] + f[3, 3])
            + a * (f[1, 0] + f[3, 2])
            + np.conj(a) * (f[0, 1] + f[2, 3])
        )
        return np.real(val)

    @classmethod
    def difference(cls, pair, lam, theta, a):
        first, second = pair
        return cls.evaluate(first, lam, theta, a) - cls.evaluate(second, lam, theta, a)

    @staticmethod
    def witness():
        """``y = v(1, 0, 0)``: ``0 <= y <= e`` separating both expansions."""
        return M4Fixture.element(1.0, 0.0)

    @staticmethod
    def ball_parameters(pitch=1e-2, refinements=1000, seed=0):
        """Points of the hermitian unit ball of ``V``.

        A ``pitch`` grid in ``(lam, theta)`` with ``|a|`` on the largest
        admissible radius and eight phases, plus ``refinements`` uniform
        random points.
        """
        t = np.arange(-1.0, 1.0 + pitch / 2, pitch)
        lam, theta = np.meshgrid(t, t, indexing="ij")
        lam, theta = lam.ravel(), theta.ravel()
        room = np.clip(1.0 - np.maximum(np.abs(lam), np.abs(theta)), 0.0, None)
        phases = np.exp(2j * np.pi * np.arange(8) / 8)
        radii = (0.0, 0.5, 1.0)
        pts = [(lam, theta, np.zeros_like(lam, dtype=complex))]
        for r in radii[1:]:
            for ph in phases:
                pts.append((lam, theta, r * room * ph))
        rng = np.random.default_rng(seed)
        rl = rng.uniform(-1, 1, refinements)
        rt = rng.uniform(-1, 1, refinements)
        rr = (1 - np.maximum(np.abs(rl), np.abs(rt))) * rng.uniform(0, 1, refinements)
        pts.append((rl, rt, rr * np.exp(2j * np.pi * rng.uniform(0, 1, refinements))))
        return tuple(np.concatenate(col) for col in zip(*pts))

    @classmethod
    def sampled_norm(cls, values_fn, pitch=1e-2, refinements=1000, seed=0):
        """Numerical stand-in for the functional norm on ``V``:
        ``max |f(v)|`` over :meth:`ball_parameters`."""
        lam, theta, a = cls.ball_parameters(pitch, refinements, seed)
        return float(np.max(np.abs(values_fn(lam, theta, a))))


def m4_fixture(lam, theta, a, b=None):
    """Element ``v(lam, theta, a, b)`` of the fixture and its functional values."""
    v = M4Fixture.element(lam, theta, a, b)
    values = {name: float(np.real(np.trace(v @ f))) for name, f in M4Fixture.densities.items()}
    return v, values
