"""Dense hermitian linear algebra for small matrices.

Everything here works on plain ``numpy`` arrays.  Hermitian matrices are
complex ``(n, n)`` arrays that went through :func:`as_hermitian`, which
checks the conjugate symmetry and stores the exact average ``(A + A*)/2``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

MAX_DIM = 64
HERMITIAN_ATOL = 1e-12
JACOBI_SWEEPS = 64
JACOBI_RTOL = 1e-13
PSD_FLOOR = -1e-10


class EigenError(ArithmeticError):
    """Raised when the Jacobi sweeps do not annihilate the off-diagonal part."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


class Eigensystem(NamedTuple):
    eigenvalues: np.ndarray
    basis: np.ndarray

    def reconstruct(self):
        u = self.basis
        return (u * self.eigenvalues) @ u.conj().T


def as_hermitian(a, atol=HERMITIAN_ATOL):
    """Validate ``a`` as a hermitian matrix and return its symmetrized copy.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Real or complex square matrix, ``1 <= n <= 64``.
    atol : float
        Largest tolerated entry of ``|a - a*|``.

    Returns
    -------
    ndarray of complex128
        ``(a + a*) / 2``.
    """
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"matrix dimension {n} outside [1, {MAX_DIM}]")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    asym = np.max(np.abs(m - m.conj().T))
    if asym > atol:
        raise ValueError(f"matrix is not hermitian (max |A - A*| = {asym:.3e})")
    return (m + m.conj().T) / 2


def frobenius(a):
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def jacobi_eigh(a, sweeps=JACOBI_SWEEPS, rtol=JACOBI_RTOL):
    """Cyclic complex Jacobi eigensolver.

    Each rotation zeroes one off-diagonal pair ``(p, q)``; a sweep visits all
    pairs.  Stops once the off-diagonal Frobenius mass is at most
    ``rtol * ||A||_F``.

    Returns
    -------
    Eigensystem
        Ascending eigenvalues and the unitary whose columns are eigenvectors.
    """
    a = as_hermitian(a)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = frobenius(a)
    target = rtol * scale
    mask = ~np.eye(n, dtype=bool)

    def off(m):
        return frobenius(m[mask])

    residual = off(a)
    for _ in range(sweeps):
        if residual <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                # rotate in the (p, q) plane after removing the phase of a_pq
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * math.atan2(2.0 * mag, aqq - app)
                c, s = math.cos(theta), math.sin(theta)
                g = np.array([[c, s * phase], [-s * np.conj(phase), c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ g
        a = (a + a.conj().T) / 2
        residual = off(a)
    if residual > target:
        raise EigenError(f"Jacobi did not converge in {sweeps} sweeps", residual)
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return Eigensystem(w[order].copy(), v[:, order])


def eigh(a, method="lapack"):
    """Eigendecomposition of a hermitian matrix, eigenvalues ascending.

    ``method="lapack"`` uses :func:`numpy.linalg.eigh`; ``method="jacobi"``
    runs :func:`jacobi_eigh`.
    """
    if method == "jacobi":
        return jacobi_eigh(a)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    a = as_hermitian(a)
    w, u = np.linalg.eigh(a)
    return Eigensystem(w, u)


def eigvalsh(a):
    return np.linalg.eigvalsh(as_hermitian(a))


def spectral_threshold(a):
    return 1e-12 * (1.0 + frobenius(a))


def spectral_parts(a):
    """Split ``a`` into orthogonal positive and negative parts.

    Returns ``(a_plus, a_minus)`` with ``a = a_plus - a_minus``, both positive
    semidefinite and ``a_plus @ a_minus = 0``.  Eigenvalues below
    ``1e-12 * (1 + ||a||_F)`` in magnitude count as zero.
    """
    a = as_hermitian(a)
    w, u = eigh(a)
    cut = spectral_threshold(a)
    pos = np.where(w > cut, w, 0.0)
    neg = np.where(w < -cut, -w, 0.0)
    a_plus = (u * pos) @ u.conj().T
    a_minus = (u * neg) @ u.conj().T
    return (a_plus + a_plus.conj().T) / 2, (a_minus + a_minus.conj().T) / 2


def _check_exponent(p):
    p = float(p)
    if math.isnan(p) or p < 1:
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    return p


def vector_pnorm(values, p, weights=None):
    """Weighted ``(sum |v_i|^p c_i)^(1/p)``; ``max |v_i|`` for ``p = inf``.

    Works along the last axis so stacks of vectors are accepted.
    """
    p = _check_exponent(p)
    v = np.abs(np.asarray(values, dtype=float))
    if p == math.inf:
        return v.max(axis=-1)
    c = 1.0 if weights is None else np.asarray(weights, dtype=float)
    if p == 1.0:
        return np.sum(v * c, axis=-1)
    # scale out the largest entry to avoid overflow for large p
    top = v.max(axis=-1, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    s = np.sum((v / safe) ** p * c, axis=-1) ** (1.0 / p)
    return s * np.squeeze(safe, axis=-1)


def schatten_norm(a, p):
    """Schatten ``p``-norm ``tr(|A|^p)^(1/p)`` of a hermitian matrix."""
    p = _check_exponent(p)
    return float(vector_pnorm(eigvalsh(a), p))


def schatten_norms(stack, p):
    """Schatten norms of a stack ``(k, n, n)`` of hermitian matrices."""
    p = _check_exponent(p)
    return vector_pnorm(np.linalg.eigvalsh(stack), p)


def block2_positive(a1, a2, b, tol=1e-12):
    """Positivity of ``[[a1, b], [conj(b), a2]]`` from its entries alone.

    True iff ``a1, a2 >= 0`` and ``|b| <= sqrt(a1 * a2)``, each with slack
    ``tol``.
    """
    if a1 < -tol or a2 < -tol:
        return False
    return abs(b) <= math.sqrt(max(a1, 0.0) * max(a2, 0.0)) + tol


def random_hermitian(n, rng, scale=1.0):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (g + g.conj().T) / 2


def random_unitary(n, rng):
    """Haar unitary from the QR decomposition of a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def is_psd(a, floor=PSD_FLOOR):
    return bool(eigvalsh(a)[0] >= floor)
