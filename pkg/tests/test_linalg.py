from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from projpos import linalg


def _random(n, seed):
    return linalg.random_hermitian(n, np.random.default_rng(seed))


# --- as_hermitian ------------------------------------------------------------


def test_as_hermitian_symmetrizes_exactly():
    a = np.array([[1.0, 2 + 1e-13j], [2.0, 3.0]])
    h = linalg.as_hermitian(a)
    assert np.array_equal(h, h.conj().T)


def test_as_hermitian_rejects_non_hermitian():
    with pytest.raises(ValueError):
        linalg.as_hermitian(np.array([[1.0, 1.0], [0.0, 1.0]]))


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.array([[np.nan]]), np.eye(65)])
def test_as_hermitian_rejects_bad_shapes_and_values(bad):
    with pytest.raises(ValueError):
        linalg.as_hermitian(bad)


# --- eigh ----------------------------------------------------------------------


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eigh_identity(method):
    w, u = linalg.eigh(np.eye(3), method=method)
    assert np.allclose(w, 1.0)
    assert np.allclose(u @ u.conj().T, np.eye(3))


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eigh_diagonal(method):
    w, _ = linalg.eigh(np.diag([2.0, 0.0, 1.0]), method=method)
    assert np.allclose(w, [0.0, 1.0, 2.0])


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
@pytest.mark.parametrize("n", [1, 2, 5, 8, 16])
def test_eigh_reconstruction_and_unitarity(method, n):
    a = _random(n, n)
    sys = linalg.eigh(a, method=method)
    fro = np.linalg.norm(a)
    assert np.linalg.norm(a - sys.reconstruct()) <= 1e-10 * (1 + fro)
    assert np.linalg.norm(sys.basis.conj().T @ sys.basis - np.eye(n)) <= 1e-10
    assert np.all(np.diff(sys.eigenvalues) >= 0)


def test_jacobi_matches_lapack():
    for seed in range(10):
        a = _random(7, seed)
        assert np.allclose(linalg.eigh(a, "jacobi").eigenvalues, np.linalg.eigvalsh(a), atol=1e-10)


def test_jacobi_reports_non_convergence():
    with pytest.raises(linalg.EigenError) as info:
        linalg.jacobi_eigh(_random(6, 0), sweeps=1)
    assert info.value.residual > 0


def test_eigh_unknown_method():
    with pytest.raises(ValueError):
        linalg.eigh(np.eye(2), method="power")


@given(st.integers(1, 6), st.integers(0, 10_000))
def test_eigenvalues_invariant_under_unitary_conjugation(n, seed):
    rng = np.random.default_rng(seed)
    a = linalg.random_hermitian(n, rng)
    u = linalg.random_unitary(n, rng)
    assert np.allclose(linalg.eigvalsh(u @ a @ u.conj().T), linalg.eigvalsh(a), atol=1e-8)


# --- spectral parts -------------------------------------------------------------


def test_spectral_parts_examples():
    plus, minus = linalg.spectral_parts(np.diag([1.0, -1.0]))
    assert np.allclose(plus, np.diag([1.0, 0.0]))
    assert np.allclose(minus, np.diag([0.0, 1.0]))
    x = np.diag([2.0, 0.0, 1.0])
    plus, minus = linalg.spectral_parts(x)
    assert np.allclose(plus, x) and np.allclose(minus, 0)


@given(st.integers(1, 8), st.integers(0, 10_000))
def test_spectral_parts_properties(n, seed):
    a = _random(n, seed)
    plus, minus = linalg.spectral_parts(a)
    assert np.allclose(plus - minus, a, atol=1e-10)
    assert np.linalg.norm(plus @ minus) <= 1e-10
    assert linalg.is_psd(plus) and linalg.is_psd(minus)
    tr = lambda m: float(np.trace(m).real)
    assert abs(tr(a) - (tr(plus) - tr(minus))) <= 1e-9
    assert abs(linalg.schatten_norm(a, 1) - (tr(plus) + tr(minus))) <= 1e-9


def test_spectral_parts_of_psd_input():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((4, 4))
    a = g @ g.T
    plus, minus = linalg.spectral_parts(a)
    assert np.allclose(plus, a) and np.allclose(minus, 0)


# --- norms ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, math.inf])
@pytest.mark.parametrize("n", [1, 3, 4])
def test_schatten_norm_of_identity(p, n):
    assert linalg.schatten_norm(np.eye(n), p) == pytest.approx(n ** (0 if p == math.inf else 1 / p))


def test_schatten_two_is_frobenius():
    for seed in range(5):
        a = _random(6, seed)
        assert linalg.schatten_norm(a, 2) == pytest.approx(np.sqrt(np.sum(np.abs(a) ** 2)), abs=1e-10)


def test_schatten_rejects_small_exponent():
    with pytest.raises(ValueError):
        linalg.schatten_norm(np.eye(2), 0.5)


@given(st.sampled_from([1.0, 1.5, 2.0, 4.0, math.inf]), st.integers(1, 5), st.integers(0, 10_000))
def test_schatten_triangle_and_unitary_invariance(p, n, seed):
    rng = np.random.default_rng(seed)
    a, b = linalg.random_hermitian(n, rng), linalg.random_hermitian(n, rng)
    u = linalg.random_unitary(n, rng)
    na = linalg.schatten_norm(a, p)
    assert linalg.schatten_norm(a + b, p) <= na + linalg.schatten_norm(b, p) + 1e-8
    assert linalg.schatten_norm(u @ a @ u.conj().T, p) == pytest.approx(na, abs=1e-8)


def test_schatten_norm_zero_iff_zero():
    assert linalg.schatten_norm(np.zeros((3, 3)), 2) == 0.0
    assert linalg.schatten_norm(np.diag([0, 0, 1e-6]), 2) > 0


def test_vector_pnorm_weighted_and_stacked():
    assert linalg.vector_pnorm([1, 1, 1], 2, [2, 2, 2]) == pytest.approx(math.sqrt(6))
    assert linalg.vector_pnorm([1, -1], 1) == 2
    stack = np.array([[3.0, 4.0], [1.0, 0.0]])
    assert np.allclose(linalg.vector_pnorm(stack, 2), [5.0, 1.0])
    # large exponents do not overflow
    assert linalg.vector_pnorm([1e200, 1e200], 4) == pytest.approx(1e200 * 2 ** 0.25)


def test_schatten_norms_batched_matches_single():
    stack = np.array([_random(3, s) for s in range(4)])
    assert np.allclose(linalg.schatten_norms(stack, 3), [linalg.schatten_norm(a, 3) for a in stack])


# --- block positivity ---------------------------------------------------------------


def test_block2_positive_examples():
    assert linalg.block2_positive(1, 4, 2)
    assert not linalg.block2_positive(1, 1, 1.5)
    assert not linalg.block2_positive(-1, 4, 0)
    assert linalg.block2_positive(0, 0, 0)


@given(
    st.floats(-1, 3, allow_nan=False),
    st.floats(-1, 3, allow_nan=False),
    st.floats(0, 3, allow_nan=False),
    st.floats(0, 2 * math.pi, allow_nan=False),
)
def test_block2_matches_eigenvalues(a1, a2, size, phase):
    b = size * np.exp(1j * phase)
    lam = np.linalg.eigvalsh(np.array([[a1, b], [np.conj(b), a2]]))[0]
    # skip the thin band where the two tolerances disagree by construction
    if abs(lam) > 1e-8:
        assert linalg.block2_positive(a1, a2, b) == (lam >= -1e-9)


def test_random_unitary_is_unitary(rng):
    u = linalg.random_unitary(5, rng)
    assert np.allclose(u.conj().T @ u, np.eye(5))
