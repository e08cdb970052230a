"""Acceptance criteria, one test per criterion.

Each test prints a ``PASS``/``FAIL`` line (also collected in the terminal
summary) with the measured quantities.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np

from projpos import linalg
from projpos.decomp import M4Fixture, orthogonal_expansion, orthogonality_witness
from projpos.epspos import check_equivalences, has_eps_oscillation, oscillation_of_log
from projpos.oracle import oracle_min_pairing
from projpos.spaces import INF, dual_norm, feasibility_threshold, pair, schatten, weighted_lp
from projpos.states import NOT_MEMBER, StateSetSpec, cone_member, min_pairing
from projpos.theorems import (
    l1_vs_linf_demo,
    sigma_closed_form,
    sigma_recursion,
    sigma_sequence,
    verify_embedding,
    verify_hilbert_closed_form,
    verify_lp2_cone,
    verify_m4,
    verify_schatten_chain,
    verify_singleton_state,
)


def _failures(reports):
    return sum(len(r.failures) for r in reports)


def test_criterion_01_lp2_cone_identity(criterion):
    with criterion(1, "l^p(2) cone equals the positive quadrant") as note:
        reports, times = [], []
        for p in (1.0, 1.5, 2.0, 3.0):
            t0 = time.perf_counter()
            reports.append(verify_lp2_cone(p, samples=1000, seed=0, tol=1e-8))
            times.append(time.perf_counter() - t0)
        note["detail"] = (
            f"failures={_failures(reports)}, seconds per p="
            + "/".join(f"{t:.2f}" for t in times)
        )
        assert all(r.instances_tested >= 1000 for r in reports)
        assert _failures(reports) == 0
        assert max(times) < 2.0


def test_criterion_02_singleton_state(criterion):
    with criterion(2, "singleton state set at the feasibility threshold") as note:
        reports = [
            verify_singleton_state(weighted_lp(p, np.ones(n)), directions=50, seed=0, tol=1e-6)
            for p in (1.5, 2.0, 4.0)
            for n in range(2, 7)
        ]
        spread = max(r.details["max_spread"] for r in reports)
        center = max(r.details["center_error"] for r in reports)
        note["detail"] = f"max spread={spread:.1e}, max center error={center:.1e}"
        assert _failures(reports) == 0
        assert spread <= 1e-6 and center <= 1e-6


def test_criterion_03_schatten_chain(criterion):
    with criterion(3, "Schatten chain and the diag(2,0,1) instance") as note:
        reports = [
            verify_schatten_chain(n, p, eps=n, samples=200, seed=0, tol=1e-8)
            for n in (2, 3, 4)
            for p in (1.0, 2.0, 3.0)
        ]
        x = np.diag([2.0, 0.0, 1.0])
        margin, y = min_pairing(StateSetSpec(schatten(1, 3), 1.0), x)
        witness_value = float(np.trace(x @ np.diag([-1.0, 1.0, 1.0])).real)
        note["detail"] = (
            f"violations={_failures(reports)}, margin={margin:.12f}, "
            f"witness pairing={witness_value:g}"
        )
        assert _failures(reports) == 0
        assert abs(margin + 1.0) <= 1e-9
        assert abs(float(np.trace(x @ y).real) - margin) <= 1e-9
        assert np.allclose(y, np.diag([-1.0, 1.0, 1.0]), atol=1e-9)
        assert witness_value == -1.0


def test_criterion_04_hilbert_closed_form(criterion):
    with criterion(4, "Hilbert-Schmidt closed form") as note:
        reports = [verify_hilbert_closed_form(n, samples=500, seed=0) for n in range(2, 7)]
        agreement = min(min(r.details["agreement"].values()) for r in reports)
        note["detail"] = f"agreement={agreement:.0%}, failures={_failures(reports)}"
        assert agreement == 1.0
        assert _failures(reports) == 0


def test_criterion_05_sigma_sequence(criterion):
    with criterion(5, "sigma sequence") as note:
        report = sigma_sequence(50)
        exact = sigma_recursion(50)
        seq = report.details["sequence"]
        note["detail"] = (
            f"sigma_1={report.details['sigma_1']}, "
            f"max closed-form error={report.details['max_closed_form_error']:.1e}"
        )
        assert exact[1] == Fraction(25, 13)
        assert abs(seq[1] - 25 / 13) <= 1e-15
        assert abs(sigma_closed_form(1) - 25 / 13) <= 1e-12
        assert report.details["max_closed_form_error"] <= 1e-10
        assert all(b < a for a, b in zip(seq[1:], seq[2:]))
        assert seq[50] < seq[1]
        assert report.passed


def test_criterion_06_orthogonal_expansion(criterion):
    with criterion(6, "orthogonal expansions and the M_4 fixture") as note:
        rng = np.random.default_rng(6)
        worst_defect = worst_pairing = 0.0
        for _ in range(500):
            n = int(rng.integers(1, 17))
            mu = linalg.random_hermitian(n, rng, rng.uniform(0.1, 10.0))
            exp = orthogonal_expansion(mu)
            worst_defect = max(worst_defect, exp.defect)
            y = orthogonality_witness(exp.mu_plus, exp.mu_minus, 1e-8)
            plus = float(np.trace(exp.mu_plus @ (np.eye(n) - y)).real)
            minus = float(np.trace(exp.mu_minus @ y).real)
            worst_pairing = max(worst_pairing, abs(plus), abs(minus))
        m4 = verify_m4(seed=0)
        norms = m4.details["sampled_norm_mu"]
        note["detail"] = (
            f"max defect={worst_defect:.1e}, max witness pairing={worst_pairing:.1e}, "
            f"sampled norms={sorted(norms.values())}"
        )
        assert worst_defect <= 1e-10
        assert worst_pairing <= 1e-8
        assert m4.passed
        assert all(abs(v - 2.0) <= 1e-3 for v in norms.values())
        grid = M4Fixture.ball_parameters(0.1, 50, 1)
        assert np.max(np.abs(M4Fixture.evaluate("tau1", *grid) - M4Fixture.evaluate("mu1", *grid))) > 0.1


def _random_function(rng, eps):
    n = int(rng.integers(1, 9))
    kind = rng.integers(4)
    if kind == 0:
        # ratio straddling the bound (eps + 1)/(eps - 1)
        bound = math.inf if eps == 1 else (eps + 1) / (eps - 1)
        hi = min(bound, 50.0) * rng.uniform(0.5, 1.5)
        return rng.uniform(1.0, max(hi, 1.0), n) * rng.uniform(0.1, 10)
    if kind == 1:
        return rng.standard_normal(n)
    if kind == 2:
        f = rng.uniform(0.0, 2.0, n)
        f[rng.integers(n)] = 0.0
        return f
    return np.full(n, rng.uniform(0.1, 5.0))


def test_criterion_07_oscillation(criterion):
    with criterion(7, "eps-oscillation and the three equivalent tests") as note:
        t = np.linspace(0.0, 1.0, 1001)
        f1, f2 = 3.0 ** t, 3.0 ** (3.0 ** t)
        rng = np.random.default_rng(7)
        disagreements = 0
        for _ in range(1000):
            eps = 1.0 if rng.uniform() < 0.1 else float(rng.uniform(1.0, 6.0))
            if not check_equivalences(_random_function(rng, eps), eps).agree:
                disagreements += 1
        note["detail"] = (
            f"omega(3^t)={oscillation_of_log(f1):.6f}, omega(3^3^t)={oscillation_of_log(f2):.6f}, "
            f"disagreements={disagreements}/1000"
        )
        assert has_eps_oscillation(f1, 2.0)
        assert not has_eps_oscillation(f2, 2.0)
        assert disagreements == 0


def test_criterion_08_paulsen_criterion(criterion):
    with criterion(8, "2x2 block positivity criterion on a 21^3 grid") as note:
        grid = np.linspace(0.0, 2.0, 21)
        mismatches = 0
        for a1 in grid:
            for a2 in grid:
                for size in grid:
                    beta = size * np.exp(0.7j)
                    lam = np.linalg.eigvalsh(np.array([[a1, beta], [np.conj(beta), a2]]))[0]
                    if linalg.block2_positive(a1, a2, beta) != (lam >= -1e-9):
                        mismatches += 1
        note["detail"] = f"mismatches={mismatches}/{21 ** 3}"
        assert mismatches == 0


def _oracle_grid():
    """60 fixed instances: 6 vector and 6 matrix problems for each exponent."""
    rng = np.random.default_rng(9)
    out = []
    for p in (1.0, 1.5, 2.0, 3.0, INF):
        for k in range(6):
            n = 2 + k % 3
            c = rng.uniform(0.5, 2.0, n)
            space = weighted_lp(p, c)
            eps = space_eps(space, rng)
            x = rng.standard_normal(n) + rng.uniform(-1.0, 2.0) * space.unit
            out.append((StateSetSpec(space, eps), x))
        for k in range(6):
            n = 2 + k % 2
            space = schatten(p, n)
            eps = space_eps(space, rng)
            x = linalg.random_hermitian(n, rng) + rng.uniform(-1.0, 2.0) * np.eye(n)
            out.append((StateSetSpec(space, eps), x))
    return out


def space_eps(space, rng):
    return feasibility_threshold(space) * float(rng.uniform(1.05, 3.0))


def test_criterion_09_solver_vs_oracle(criterion):
    with criterion(9, "solver against the sampling oracle") as note:
        grid = _oracle_grid()
        t0 = time.perf_counter()
        below = worst = 0.0
        for i, (spec, x) in enumerate(grid):
            margin = min_pairing(spec, x)[0]
            est = oracle_min_pairing(spec, x, budget=10_000, seed=i)
            below = min(below, est - margin)
            worst = max(worst, est - margin)
        elapsed = time.perf_counter() - t0
        note["detail"] = (
            f"instances={len(grid)}, min(oracle - solver)={below:.1e}, "
            f"max(oracle - solver)={worst:.1e}, seconds={elapsed:.1f}"
        )
        assert len(grid) == 60
        assert {s.space.kind for s, _ in grid} == {"weighted_vector", "matrix"}
        assert below >= -1e-9
        assert worst <= 1e-3
        assert elapsed < 60.0


def test_criterion_10_embedding_constants(criterion):
    with criterion(10, "embedding constants on M_n") as note:
        reports = [
            verify_embedding(n, p, l, samples=200, seed=0, tol=1e-9)
            for p, l in ((1.0, 2.0), (2.0, 4.0), (1.0, INF))
            for n in (2, 3, 4)
        ]
        slack = min(r.details["constant"] - r.details["max_ball_ratio"] for r in reports)
        note["detail"] = f"failures={_failures(reports)}, min ball slack={slack:.1e}"
        assert _failures(reports) == 0
        assert slack >= -1e-9
        assert abs(verify_embedding(3, 1.0, 2.0, samples=1).details["constant"] - math.sqrt(3)) < 1e-12


def test_criterion_11_l1_vs_linf(criterion):
    with criterion(11, "discretized L^1 step element") as note:
        report = l1_vs_linf_demo(1000, 2.0)
        d = report.details
        note["detail"] = (
            f"r={d['r']:.3f} (bound {d['bound']:.4f}), margin={d['margin']:.2e}, "
            f"doubled r margin={d['doubled_margin']:.3f}"
        )
        assert report.passed
        assert d["margin"] >= -1e-9
        space = weighted_lp(1, np.full(1000, 2e-3), np.ones(1000))
        spec = StateSetSpec(space, 2.0)
        x = np.ones(1000)
        cells = int(math.floor(2 * d["bound"] * 500))
        x[:cells] = -2.0 * cells / 1000
        assert x.min() < 0
        cert = cone_member(spec, x)
        assert cert.verdict == NOT_MEMBER
        y = cert.witness
        assert abs(pair(space, space.unit, y) - 1) <= 1e-9
        assert dual_norm(space, y) <= 2.0 * (1 + 1e-9)
        assert pair(space, x, y) < 0
