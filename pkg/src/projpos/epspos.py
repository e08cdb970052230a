"""ε-positivity in operator systems and ε-oscillation of functions on a finite set.

An element ``v`` of an operator system is ε-positive when

    v >= ||v|| (eps - 1) / (eps + 1) e,

so ``eps = 1`` is ordinary positivity and larger ``eps`` pinches the
spectrum toward the unit.  On ``C(T)`` with ``T = {1, ..., n}`` a positive
``f`` is ε-positive exactly when ``ln f`` oscillates by at most
``c_eps = ln((eps + 1) / (eps - 1))``, and exactly when ``<f, A_eps> >= 0``
for the state set ``A_eps = {(1 + s) phi - s psi : 0 <= s <= (eps - 1) / 2}``
of the system ``l^inf(n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .spaces import weighted_lp
from .states import StateSetSpec, min_pairing

DEFAULT_TOL = 1e-10


def _check_eps(eps):
    eps = float(eps)
    if not eps >= 1:
        raise ValueError(f"eps must be >= 1, got {eps}")
    return eps


def pinch_ratio(eps):
    """``(eps - 1) / (eps + 1)``, the lower spectral bound relative to the norm."""
    eps = _check_eps(eps)
    return (eps - 1.0) / (eps + 1.0)


def oscillation_bound(eps):
    """``c_eps = ln((eps + 1) / (eps - 1))``; ``c_1 = +inf``."""
    eps = _check_eps(eps)
    if eps == 1.0:
        return math.inf
    return math.log((eps + 1.0) / (eps - 1.0))


def _spectrum(x):
    a = np.asarray(x)
    if a.ndim == 2:
        return linalg.eigvalsh(a)
    v = np.array(a, dtype=float).ravel()
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise ValueError("expected a non-empty finite vector")
    return v


def is_eps_positive(x, eps, tol=DEFAULT_TOL):
    """``min sigma(x) >= (eps - 1)/(eps + 1) * max |sigma(x)|``.

    ``x`` is a hermitian matrix (spectrum from ``eigh``) or a real vector,
    read as a function on a finite set (its values are its spectrum).
    """
    lam = _spectrum(x)
    r = pinch_ratio(eps)
    return bool(lam.min() >= r * np.abs(lam).max() - tol)


def _check_nonnegative(f):
    v = np.array(f, dtype=float).ravel()
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise ValueError("expected a non-empty finite vector")
    if np.any(v < 0):
        raise ValueError("oscillation of ln f needs f >= 0")
    return v


def oscillation_of_log(f):
    """``max ln f - min ln f``; ``inf`` when ``f`` has zeros next to nonzero values.

    The zero function has oscillation ``0``.
    """
    v = _check_nonnegative(f)
    if not np.any(v > 0):
        return 0.0
    if np.any(v == 0):
        return math.inf
    return float(np.log(v.max()) - np.log(v.min()))


def has_eps_oscillation(f, eps, tol=DEFAULT_TOL):
    """``f = 0`` or ``omega(ln f) <= c_eps``; always true for ``eps = 1``."""
    v = _check_nonnegative(f)
    c = oscillation_bound(eps)
    if c == math.inf or not np.any(v > 0):
        return True
    return oscillation_of_log(v) <= c + tol


def operator_system_states(n, eps):
    """``S_eps`` of ``l^inf(n)`` with unit ``(1, ..., 1)``: sum one, ``l^1`` norm at most ``eps``."""
    return StateSetSpec(weighted_lp(math.inf, np.ones(n)), _check_eps(eps))


@dataclass(frozen=True)
class EquivalenceReport:
    eps_positive: bool
    eps_oscillation: bool
    state_pairing: bool
    margin: float

    @property
    def agree(self):
        return self.eps_positive == self.eps_oscillation == self.state_pairing


def check_equivalences(f, eps, tol=1e-9):
    """Evaluate the three characterizations of ε-positivity of ``f`` on ``{1..n}``.

    (i) the spectral inequality, (ii) the log-oscillation bound (false for
    functions with negative values), (iii) ``<f, S_eps> >= 0`` in the
    operator system ``l^inf(n)``.
    """
    v = np.array(f, dtype=float).ravel()
    eps = _check_eps(eps)
    first = is_eps_positive(v, eps, tol)
    second = bool(np.all(v >= 0)) and has_eps_oscillation(v, eps, tol)
    margin, _ = min_pairing(operator_system_states(v.size, eps), v)
    third = margin >= -tol * (1.0 + np.abs(v).max())
    return EquivalenceReport(first, second, bool(third), margin)


def _is_state(phi, tol):
    a = np.asarray(phi)
    if a.ndim == 2:
        lam = linalg.eigvalsh(a)
        return lam.min() >= linalg.PSD_FLOOR and abs(lam.sum() - 1.0) <= tol
    return np.min(a) >= linalg.PSD_FLOOR and abs(np.sum(a) - 1.0) <= tol


def build_A_eps_element(phi, psi, s, eps, tol=1e-9):
    """``(1 + s) phi - s psi`` for states ``phi, psi`` and ``0 <= s <= (eps - 1)/2``.

    States are density matrices (trace duality with ``M_n``) or probability
    vectors (duality with ``l^inf(n)``).  The result is checked to have
    ``<e, y> = 1`` and trace norm (``l^1`` norm) at most ``1 + 2 s <= eps``.
    """
    eps = _check_eps(eps)
    s = float(s)
    if not -tol <= s <= (eps - 1.0) / 2.0 + tol:
        raise ValueError(f"s = {s} outside [0, (eps - 1)/2] = [0, {(eps - 1) / 2}]")
    for name, st in (("phi", phi), ("psi", psi)):
        if not _is_state(st, tol):
            raise ValueError(f"{name} is not a state")
    phi = np.asarray(phi)
    psi = np.asarray(psi)
    y = (1.0 + s) * phi - s * psi
    if y.ndim == 2:
        total = float(np.trace(y).real)
        dual = linalg.schatten_norm(y, 1)
    else:
        total = float(np.sum(y))
        dual = float(np.abs(y).sum())
    if abs(total - 1.0) > tol or dual > eps * (1.0 + tol):
        raise ArithmeticError(f"result left S_eps (<e, y> = {total}, norm = {dual})")
    return y
