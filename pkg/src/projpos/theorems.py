"""Executable checks of the cone and state-space results at desk scale.

Every verifier returns a :class:`VerifierReport`.  Randomness comes from a
generator seeded by ``(seed, theorem id)``, so reports are reproducible and
independent of the order in which verifiers run.
"""

from __future__ import annotations

import math
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .decomp import M4Fixture, orthogonality_witness
from .epspos import is_eps_positive
from .oracle import oracle_min_pairing
from .spaces import (
    INF,
    MATRIX,
    dual_norm,
    feasibility_threshold,
    inverse,
    pair,
    schatten,
    weighted_lp,
)
from .states import (
    NOT_MEMBER,
    StateSetSpec,
    cone_member,
    min_pairing,
    minimal_norm_state,
    sample_states,
)

ORACLE_AGREEMENT = 1e-3


@dataclass
class VerifierReport:
    theorem_id: str
    instances_tested: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def fail(self, instance, expected, got, margin=None):
        self.failures.append(
            {"input": instance, "expected": expected, "got": got, "margin": margin}
        )

    def to_dict(self, timing=True):
        out = {
            "theorem_id": self.theorem_id,
            "passed": self.passed,
            "instances_tested": self.instances_tested,
            "failures": self.failures,
            "details": self.details,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1e3, 3)
        return out


def stream(seed, theorem_id):
    """Generator for ``(seed, theorem_id)``; stable across runs and platforms."""
    return np.random.default_rng([int(seed), zlib.crc32(theorem_id.encode())])


class _timed:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed = time.perf_counter() - self.t0
        return False


def _plain(x):
    """JSON-friendly copy of an element."""
    a = np.asarray(x)
    if np.iscomplexobj(a):
        if np.max(np.abs(a.imag), initial=0.0) == 0.0:
            return a.real.tolist()
        return np.stack([a.real, a.imag], axis=-1).tolist()
    return a.tolist()


def _is_member(spec, x, tol):
    return cone_member(spec, x, tol).verdict != NOT_MEMBER


def _cross_check(report, spec, x, margin, budget, seed):
    est = oracle_min_pairing(spec, x, budget=budget, seed=seed)
    if est < margin - 1e-9 or est - margin > ORACLE_AGREEMENT:
        report.fail(_plain(x), {"oracle": est}, {"solver": margin}, est - margin)


# --- l^p(2) cone -------------------------------------------------------------


def verify_lp2_cone(p, samples=1000, seed=0, tol=1e-8, oracle=False, budget=2000):
    """``l^p(2)`` with ``eps = 2^(1/p)``: the projective cone is the positive quadrant."""
    tid = "lp2-cone"
    report = VerifierReport(tid, details={"p": p})
    with _timed(report):
        p = float(p)
        if p == INF:
            raise ValueError("verify_lp2_cone needs p < inf")
        spec = StateSetSpec(weighted_lp(p, [1.0, 1.0]), 2.0 ** (1.0 / p))
        report.details["eps"] = spec.eps
        rng = stream(seed, tid)
        fixed = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, -0.01], [-0.01, 1.0], [1.0, 1.0]])
        xs = np.concatenate([fixed, rng.standard_normal((samples, 2))])
        for x in xs:
            expected = bool(np.all(x >= 0))
            cert = cone_member(spec, x, tol)
            got = cert.verdict != NOT_MEMBER
            if got != expected:
                report.fail(x.tolist(), expected, got, cert.margin)
            if oracle:
                _cross_check(report, spec, x, cert.margin, budget, seed)
        report.instances_tested = len(xs)
    return report


# --- singleton state space -------------------------------------------------


def _expected_center(space):
    if space.kind == MATRIX:
        return np.eye(space.dim) / (space.unit_scale * space.dim)
    c = space.weights
    if np.allclose(space.unit, c.sum() ** (-inverse(space.p))):
        return np.full(c.size, c.sum() ** (-inverse(space.q)))
    return minimal_norm_state(space)


def verify_singleton_state(space, directions=50, seed=0, tol=1e-6):
    """At ``eps = 1/||e||`` the state set is the single point ``y0``.

    Three checks: the solver's support function spread ``max - min`` over
    random directions; that ``y0`` matches the closed form (``e_q`` for the
    default units, ``I / (t n)`` for ``e = t I``); and that every other
    point ``y0 + t d`` of the hyperplane has strictly larger dual norm.
    """
    tid = "singleton"
    report = VerifierReport(tid, details={"space": space.to_dict()})
    with _timed(report):
        if space.p == INF:
            raise ValueError("the state set is a singleton only for p < inf")
        thr = feasibility_threshold(space)
        spec = StateSetSpec(space, thr)
        rng = stream(seed, tid)
        center = _expected_center(space)
        y0 = minimal_norm_state(space)
        gap = float(np.abs(y0 - center).max())
        report.details["center"] = _plain(center)
        report.details["center_error"] = gap
        if gap > tol:
            report.fail("center", _plain(center), _plain(y0), gap)
        spread = 0.0
        for _ in range(directions):
            if space.kind == MATRIX:
                d = linalg.random_hermitian(space.dim, rng)
            else:
                d = rng.standard_normal(space.weights.size)
            lo, _ = min_pairing(spec, d)
            hi = -min_pairing(spec, -d)[0]
            target = pair(space, d, center)
            spread = max(spread, hi - lo)
            if hi - lo > tol or abs(lo - target) > tol:
                report.fail(_plain(d), target, [lo, hi], hi - lo)
            # any other hyperplane point lies outside the eps-ball
            step = d - pair(space, space.unit, d) * y0
            for t in (1e-3, 1e-1, 1.0):
                if dual_norm(space, y0 + t * step) <= thr * (1 + 1e-12):
                    report.fail(_plain(step), "outside", "inside", t)
        report.details["max_spread"] = spread
        report.instances_tested = directions
    return report


# --- comparability threshold -----------------------------------------------


def comparability_threshold(c, p):
    """``r_c = min_k ((sum c) / (sum_{j != k} c_j))^(1/p)``."""
    c = np.asarray(c, dtype=float)
    total = c.sum()
    return float(np.min((total / (total - c)) ** inverse(p)))


def _two_level_witness(space, eps, k):
    """State with ``y_k = -delta < 0`` and equal values elsewhere, if one fits in ``S_eps``.

    Returns ``None`` when even the smallest tested ``delta`` leaves the ball.
    """
    c = space.weights
    mass = float(np.sum(space.unit * c))
    rest = c.sum() - c[k]
    for delta in np.geomspace(1.0, 1e-9, 91):
        y = np.full(c.size, (1.0 + delta * c[k] * space.unit[k]) / (mass - c[k] * space.unit[k]))
        y[k] = -delta
        if rest > 0 and dual_norm(space, y) <= eps:
            return y
    return None


def verify_comparability(c, p, eps, samples=500, seed=0, tol=1e-9):
    """Finite weights: for ``1 < eps <= r_c`` the states are nonnegative.

    Sufficiency is checked by sampling states and positive elements and by
    minimizing each coordinate over ``S_eps``.  Above ``r_c`` the verifier
    only searches for a state with a negative coordinate and records
    whether one was found.
    """
    tid = "comparability"
    space = weighted_lp(p, c)
    r_c = comparability_threshold(space.weights, space.p)
    report = VerifierReport(tid, details={"weights": space.weights.tolist(), "p": p, "eps": eps, "r_c": r_c})
    with _timed(report):
        if not eps > 1:
            raise ValueError("comparability needs eps > 1")
        spec = StateSetSpec(space, eps)
        n = space.weights.size
        coord_min = [min_pairing(spec, np.eye(n)[k])[0] for k in range(n)]
        report.details["min_coordinate_pairing"] = coord_min
        if eps <= r_c:
            report.details["mode"] = "sufficiency"
            for k, m in enumerate(coord_min):
                if m < -tol:
                    report.fail(f"coordinate {k}", ">= 0", m, m)
            ys = sample_states(spec, samples, seed=int(stream(seed, tid).integers(2**63)))
            for y in ys:
                if y.min() < -tol:
                    report.fail(_plain(y), "nonnegative state", "negative coordinate", float(y.min()))
            rng = stream(seed, tid + "/x")
            for x in rng.exponential(1.0, (samples, n)):
                cert = cone_member(spec, x, tol)
                if cert.verdict == NOT_MEMBER:
                    report.fail(x.tolist(), "Member", cert.verdict, cert.margin)
            report.instances_tested = n + 2 * samples
        else:
            report.details["mode"] = "probe"
            found = None
            for k in range(n):
                found = _two_level_witness(space, eps, k)
                if found is not None:
                    break
            report.details["witness_found"] = found is not None
            report.details["witness"] = None if found is None else found.tolist()
            report.details["solver_negative_coordinate"] = bool(min(coord_min) < -tol)
            report.instances_tested = n
    return report


# --- Schatten chain ----------------------------------------------------------


def _sample_eps_positive(n, eps, rng):
    """Random element of ``M_{n,eps}^+``: spectrum in ``[r, 1]`` times a random scale."""
    r = (eps - 1.0) / (eps + 1.0)
    lam = rng.uniform(r, 1.0, n)
    lam[rng.integers(n)] = 1.0
    u = linalg.random_unitary(n, rng)
    x = (u * lam) @ u.conj().T * rng.uniform(0.1, 3.0)
    return (x + x.conj().T) / 2


def _sample_cone(spec, rng, tol, tries=10_000):
    """Rejection sampler for the projective cone of a Schatten space."""
    n = spec.space.dim
    for _ in range(tries):
        x = rng.uniform(0.0, 2.0) * np.eye(n) + linalg.random_hermitian(n, rng, rng.uniform(0.05, 1.0))
        if cone_member(spec, x, tol).verdict != NOT_MEMBER:
            return x
    raise RuntimeError("rejection sampler exhausted its budget")


def verify_schatten_chain(n, p, eps=None, samples=200, seed=0, tol=1e-8):
    """``M_{n,eps}^+ ⊆ S_1^+ ⊆ S_p^+ ⊆ M_n^+`` for ``eps >= n``.

    ``S_r^+`` is the projective cone at ``eps = 1`` of the Schatten class
    with unit ``I``.  Members of each smaller cone are drawn by rejection
    and tested against every larger one; exponents are also compared
    pairwise along ``1 <= p <= inf``.
    """
    tid = "schatten-chain"
    eps = float(n if eps is None else eps)
    report = VerifierReport(tid, details={"n": n, "p": p, "eps": eps})
    with _timed(report):
        if eps < n:
            raise ValueError("the chain is stated for eps >= n")
        rng = stream(seed, f"{tid}/{n}/{p}")
        exps = sorted({1.0, float(p), 2.0, INF})
        specs = {r: StateSetSpec(schatten(r, n), 1.0) for r in exps}
        ladder = [("eps-positive", None)] + [(f"S_{r:g}", specs[r]) for r in exps]
        # the instance that separates S_1^+ from M_n^+
        if n == 3:
            x = np.diag([2.0, 0.0, 1.0])
            m1 = min_pairing(specs[1.0], x)[0]
            report.details["diag201_margin_S1"] = m1
            if abs(m1 + 1.0) > 1e-9:
                report.fail("diag(2,0,1) in S_1", -1.0, m1, m1 + 1.0)
            if not _is_member(specs[INF], x, tol):
                report.fail("diag(2,0,1) in M_3^+", "Member", NOT_MEMBER)
        tested = 0
        for level, (name, spec) in enumerate(ladder[:-1]):
            for _ in range(samples):
                if spec is None:
                    x = _sample_eps_positive(n, eps, rng)
                    if not is_eps_positive(x, eps):
                        report.fail(_plain(x), "eps-positive sample", "rejected")
                        continue
                else:
                    x = _sample_cone(spec, rng, tol)
                for bigger, bigger_spec in ladder[level + 1 :]:
                    m = min_pairing(bigger_spec, x)[0]
                    if m < -tol:
                        report.fail({"cone": name, "x": _plain(x)}, f"member of {bigger}", m, m)
                tested += 1
        report.instances_tested = tested
    return report


# --- Hilbert-Schmidt closed form ---------------------------------------------


def hilbert_closed_form(x, eps_case="one"):
    """Closed-form membership in the Hilbert-Schmidt cone.

    ``eps_case="one"``: ``||x||_2 <= (n/(n-1))^(1/2) (x, e_2)``;
    ``eps_case="sqrt2n"`` (``eps = (2/n)^(1/2)``): ``||x||_2 <= 2^(1/2) (x, e_2)``;
    here ``e_2 = n^(-1/2) I``.  Returns ``(member, slack)``.
    """
    x = linalg.as_hermitian(x)
    n = x.shape[0]
    inner = float(np.trace(x).real) / math.sqrt(n)
    factor = math.sqrt(n / (n - 1.0)) if eps_case == "one" else math.sqrt(2.0)
    slack = factor * inner - linalg.frobenius(x)
    return slack >= 0, slack


def _hilbert_boundary(n, rng, eps_case):
    """``x = I + x0`` with traceless ``x0`` placed exactly on the cone boundary."""
    h = linalg.random_hermitian(n, rng)
    h = h - np.trace(h).real / n * np.eye(n)
    # tr(x) = n, and the boundary sits at ||x0||_2 = tr(x) / sqrt(n (n - 1)) or tr(x) / sqrt(n)
    size = n / math.sqrt(n * (n - 1.0)) if eps_case == "one" else math.sqrt(n)
    h *= size / linalg.frobenius(h)
    return np.eye(n) + h


def verify_hilbert_closed_form(n, samples=500, seed=0, tol=1e-9, boundary_tol=1e-7):
    """Solver verdicts in ``S_2(M_n)`` against the closed forms at ``eps = 1`` and ``eps = (2/n)^(1/2)``."""
    tid = "hilbert"
    report = VerifierReport(tid, details={"n": n})
    with _timed(report):
        if n < 2:
            raise ValueError("n must be at least 2")
        rng = stream(seed, f"{tid}/{n}")
        cases = {"one": 1.0, "sqrt2n": math.sqrt(2.0 / n)}
        agree = {k: 0 for k in cases}
        for case, eps in cases.items():
            spec = StateSetSpec(schatten(2, n), eps)
            for _ in range(samples):
                x = rng.uniform(-0.5, 3.0) * np.eye(n) + linalg.random_hermitian(n, rng)
                expected, _ = hilbert_closed_form(x, case)
                cert = cone_member(spec, x, tol)
                got = cert.verdict != NOT_MEMBER
                if got == expected:
                    agree[case] += 1
                else:
                    report.fail({"eps": eps, "x": _plain(x)}, expected, got, cert.margin)
            for _ in range(5):
                x = _hilbert_boundary(n, rng, case)
                m = min_pairing(spec, x)[0]
                if abs(m) > boundary_tol:
                    report.fail({"eps": eps, "boundary": _plain(x)}, 0.0, m, m)
        report.details["agreement"] = {k: v / samples for k, v in agree.items()}
        report.instances_tested = 2 * (samples + 5)
    return report


# --- sigma sequence ----------------------------------------------------------


def sigma_recursion(n_max):
    """Exact ``sigma_n`` from ``sigma_0 = 2`` and
    ``sigma_n = sigma_{n-1} (2n + 10)/(2n + 11) + 1/(2n + 11)``."""
    seq = [Fraction(2)]
    for n in range(1, n_max + 1):
        seq.append(seq[-1] * Fraction(2 * n + 10, 2 * n + 11) + Fraction(1, 2 * n + 11))
    return seq


def sigma_closed_form(n):
    """``693 sqrt(pi) Gamma(n + 6) / (512 Gamma(n + 13/2)) + 1`` via log-gamma."""
    return 693.0 * math.sqrt(math.pi) * math.exp(math.lgamma(n + 6.0) - math.lgamma(n + 6.5)) / 512.0 + 1.0


def sigma_sequence(n_max=50, tol=1e-10):
    tid = "sigma"
    report = VerifierReport(tid, details={"n_max": n_max})
    with _timed(report):
        if n_max < 1:
            raise ValueError("n_max must be at least 1")
        exact = sigma_recursion(n_max)
        floats = [float(s) for s in exact]
        report.details["sequence"] = floats
        report.details["sigma_1"] = f"{exact[1].numerator}/{exact[1].denominator}"
        if exact[1] != Fraction(25, 13) or abs(floats[1] - 25 / 13) > 1e-15:
            report.fail("sigma_1", "25/13", str(exact[1]))
        worst = 0.0
        for n in range(n_max + 1):
            err = abs(floats[n] - sigma_closed_form(n))
            worst = max(worst, err)
            if err > tol:
                report.fail(f"sigma_{n}", floats[n], sigma_closed_form(n), err)
            if n >= 1 and not exact[n] < exact[n - 1]:
                report.fail(f"sigma_{n}", "decreasing", floats[n])
        report.details["max_closed_form_error"] = worst
        if not floats[n_max] - 1 < floats[1] - 1:
            report.fail(f"sigma_{n_max}", "< sigma_1", floats[n_max])
        report.instances_tested = n_max + 1
    return report


# --- embedding constants -----------------------------------------------------


def embedding_constant(n, p, l):
    """``n^((l - p)/(l p)) = n^(1/p - 1/l)``."""
    return float(n) ** (inverse(p) - inverse(l))


def verify_embedding(n, p, l, samples=200, seed=0, tol=1e-9):
    """Ball inclusion ``||x||_p <= K ||x||_l`` and cone inclusion
    ``S_{l,K}^+ ⊆ S_p^+`` with ``K = n^(1/p - 1/l)`` on ``M_n``."""
    tid = "embedding"
    p = float(p)
    l = float(l)
    report = VerifierReport(tid, details={"n": n, "p": p, "l": "inf" if l == INF else l})
    with _timed(report):
        if not p < l:
            raise ValueError("need p < l")
        k = embedding_constant(n, p, l)
        report.details["constant"] = k
        rng = stream(seed, f"{tid}/{n}/{p}/{l}")
        worst = 0.0
        for _ in range(samples):
            x = linalg.random_hermitian(n, rng)
            x /= linalg.schatten_norm(x, l)
            ratio = linalg.schatten_norm(x, p)
            worst = max(worst, ratio)
            if ratio > k + tol:
                report.fail(_plain(x), f"<= {k}", ratio, ratio - k)
        report.details["max_ball_ratio"] = worst
        big = StateSetSpec(schatten(l, n), k)
        small = StateSetSpec(schatten(p, n), 1.0)
        for _ in range(samples):
            x = _sample_cone(big, rng, tol)
            m = min_pairing(small, x)[0]
            if m < -tol:
                report.fail(_plain(x), "member of S_p^+", m, m)
        report.instances_tested = 2 * samples
    return report


# --- discretized L^1 versus L^inf -------------------------------------------


def l1_step_bound(eps):
    """Largest ``r`` with ``1 - eps r - eps r^2 >= 0``."""
    return -0.5 + math.sqrt(1.0 / eps + 0.25)


def l1_step_space(grid_size):
    """``l^1`` on ``grid_size`` cells of ``[0, 2]`` (weight ``2/N``) with unit ``(1, ..., 1)``."""
    return weighted_lp(1, np.full(grid_size, 2.0 / grid_size), np.ones(grid_size))


def l1_step_element(grid_size, r):
    """``-r`` on the cells inside ``[0, r]`` and ``1`` elsewhere; ``r`` snapped down to the grid."""
    cells = int(math.floor(r * grid_size / 2.0 + 1e-12))
    x = np.ones(grid_size)
    x[:cells] = -2.0 * cells / grid_size
    return x, cells, 2.0 * cells / grid_size


def l1_vs_linf_demo(grid_size=1000, eps=2.0, tol=1e-9):
    """A step element with negative values that the projective cone still accepts.

    With ``r`` at the bound the element is a member; doubling ``r`` must
    produce a witness state with negative pairing.
    """
    tid = "l1-linf"
    report = VerifierReport(tid, details={"grid_size": grid_size, "eps": eps})
    with _timed(report):
        if not eps > 1:
            raise ValueError("eps must exceed 1")
        space = l1_step_space(grid_size)
        spec = StateSetSpec(space, eps)
        bound = l1_step_bound(eps)
        x, cells, r = l1_step_element(grid_size, bound)
        if cells < 8:
            raise ValueError(f"grid too coarse: only {cells} cells in [0, r]")
        cert = cone_member(spec, x, tol)
        exact = 1 - eps * r - eps * r * r
        report.details.update(bound=bound, r=r, cells=cells, margin=cert.margin, predicted_margin=exact)
        if cert.verdict == NOT_MEMBER or cert.margin < -tol:
            report.fail({"r": r}, "Member", cert.verdict, cert.margin)
        if not x.min() < 0:
            report.fail({"r": r}, "negative coordinates", float(x.min()))
        if abs(cert.margin - exact) > 1e-9:
            report.fail({"r": r}, exact, cert.margin, cert.margin - exact)
        x2, _, r2 = l1_step_element(grid_size, 2 * bound)
        cert2 = cone_member(spec, x2, tol)
        report.details.update(doubled_r=r2, doubled_margin=cert2.margin)
        if cert2.verdict != NOT_MEMBER:
            report.fail({"r": r2}, NOT_MEMBER, cert2.verdict, cert2.margin)
        else:
            y = cert2.witness
            ok = (
                abs(pair(space, space.unit, y) - 1) <= 1e-9
                and dual_norm(space, y) <= eps * (1 + 1e-9)
                and pair(space, x2, y) < 0
            )
            if not ok:
                report.fail({"r": r2}, "valid witness", "invalid witness")
        report.instances_tested = 2
    return report


# --- M_4 fixture -------------------------------------------------------------


def verify_m4(seed=0, pitch=1e-2, refinements=1000, tol=1e-3):
    """Two distinct orthogonal expansions of one functional on the ``M_4`` fixture."""
    tid = "m4"
    report = VerifierReport(tid)
    with _timed(report):
        f = M4Fixture
        rng = stream(seed, tid)
        for name in f.densities:
            if abs(f.evaluate(name, 1.0, 1.0, 0.0) - 1.0) > 1e-12:
                report.fail(f"{name}(e)", 1.0, float(f.evaluate(name, 1.0, 1.0, 0.0)))
        pos_checks = 0
        for lam, theta, mag in rng.uniform([-1, -1, 0], [2, 2, 2], (500, 3)):
            a = mag * np.exp(2j * np.pi * rng.uniform())
            closed = f.is_positive(lam, theta, a)
            spectral = linalg.eigvalsh(f.element(lam, theta, a)).min() >= -1e-10
            pos_checks += 1
            if closed != spectral:
                report.fail({"lam": lam, "theta": theta, "a": [a.real, a.imag]}, spectral, closed)
            if closed:
                for name in f.densities:
                    if f.evaluate(name, lam, theta, a) < -1e-12:
                        report.fail({"functional": name}, ">= 0 on V_+", float(f.evaluate(name, lam, theta, a)))
        norms = {}
        sample = dict(pitch=pitch, refinements=refinements, seed=int(rng.integers(2**32)))
        for name in f.densities:
            norms[name] = f.sampled_norm(lambda l, t, a, nm=name: f.evaluate(nm, l, t, a), **sample)
        mu_norm = {}
        for pair_ in f.expansions:
            mu_norm[pair_] = f.sampled_norm(lambda l, t, a, pr=pair_: f.difference(pr, l, t, a), **sample)
            first, second = pair_
            if abs(mu_norm[pair_] - 2.0) > tol:
                report.fail(f"||{first} - {second}||", 2.0, mu_norm[pair_])
            if abs(norms[first] + norms[second] - mu_norm[pair_]) > tol:
                report.fail(f"additivity {pair_}", mu_norm[pair_], norms[first] + norms[second])
        exact = float(f.difference(("mu1", "mu2"), 1.0, -1.0, 0.0))
        if abs(exact - 2.0) > 1e-12:
            report.fail("mu(v(1, -1, 0))", 2.0, exact)
        grid = f.ball_parameters(0.1, 200, 0)
        same = np.max(np.abs(f.difference(("mu1", "mu2"), *grid) - f.difference(("tau1", "tau2"), *grid)))
        distinct = np.max(np.abs(f.evaluate("tau1", *grid) - f.evaluate("mu1", *grid)))
        if same > 1e-12:
            report.fail("mu1 - mu2 == tau1 - tau2 on V", 0.0, float(same))
        if distinct < 0.1:
            report.fail("(tau1, tau2) != (mu1, mu2)", "distinct", float(distinct))
        y = f.witness()
        e = np.eye(4)
        for first, second in f.expansions:
            d1, d2 = f.densities[first], f.densities[second]
            plus = float(np.trace((e - y) @ d1).real)
            minus = float(np.trace(y @ d2).real)
            if plus > 1e-12 or minus > 1e-12:
                report.fail(f"witness for ({first}, {second})", 0.0, [plus, minus])
        try:
            orthogonality_witness(f.densities["mu1"], f.densities["mu2"], 1e-8)
        except ValueError as exc:
            report.fail("spectral witness (mu1, mu2)", "exists", str(exc))
        report.details.update(
            sampled_norms={k: v for k, v in norms.items()},
            sampled_norm_mu={f"{a}-{b}": v for (a, b), v in mu_norm.items()},
            norm_is_sampled=True,
        )
        report.instances_tested = pos_checks + len(norms) + len(mu_norm)
    return report


# --- registry -----------------------------------------------------------------

VERIFIERS = (
    "lp2-cone",
    "singleton",
    "comparability",
    "schatten-chain",
    "hilbert",
    "sigma",
    "embedding",
    "l1-linf",
    "m4",
)


def default_grid(seed=0, samples=None):
    """Deterministic list of ``(theorem_id, thunk)`` covering every verifier."""
    s = (lambda default: default if samples is None else samples)
    runs = []
    for p in (1.0, 1.5, 2.0, 3.0):
        runs.append(("lp2-cone", lambda p=p: verify_lp2_cone(p, s(1000), seed)))
    for p in (1.5, 2.0, 4.0):
        for n in range(2, 7):
            runs.append(("singleton", lambda p=p, n=n: verify_singleton_state(weighted_lp(p, np.ones(n)), 50, seed)))
    runs.append(("singleton", lambda: verify_singleton_state(schatten(2, 3, 3 ** -0.5), 50, seed)))
    runs.append(("comparability", lambda: verify_comparability([1, 1], 1, 2.0, s(200), seed)))
    runs.append(("comparability", lambda: verify_comparability([1, 1, 1], 2, 1.1, s(200), seed)))
    runs.append(("comparability", lambda: verify_comparability([1, 1, 1], 2, 1.5, s(200), seed)))
    for n in (2, 3, 4):
        for p in (1.0, 2.0, 3.0):
            runs.append(("schatten-chain", lambda n=n, p=p: verify_schatten_chain(n, p, n, s(200), seed)))
    for n in range(2, 7):
        runs.append(("hilbert", lambda n=n: verify_hilbert_closed_form(n, s(500), seed)))
    runs.append(("sigma", lambda: sigma_sequence(50)))
    for p, l in ((1.0, 2.0), (2.0, 4.0), (1.0, INF)):
        for n in (2, 3, 4):
            runs.append(("embedding", lambda n=n, p=p, l=l: verify_embedding(n, p, l, s(200), seed)))
    runs.append(("l1-linf", lambda: l1_vs_linf_demo(1000, 2.0)))
    runs.append(("l1-linf", lambda: l1_vs_linf_demo(1000, 1.5)))
    runs.append(("m4", lambda: verify_m4(seed)))
    return runs
