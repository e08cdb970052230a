"""Command line front end.

Every subcommand prints one JSON report on stdout.  Exit status: 0 when the
result was computed (whatever the verdict), 1 when a verification or an
oracle cross-check failed, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import decomp, epspos, theorems
from .oracle import oracle_min_pairing
from .spaces import MATRIX, check_exponent, space_from_dict, weighted_lp
from .states import (
    DEFAULT_TOL,
    InfeasibleStateSet,
    StateSetSpec,
    cone_member,
    decompose_state,
    eps_norm,
    min_pairing,
    sample_states,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
ORACLE_AGREEMENT = 1e-3


class InputError(Exception):
    pass


# --- JSON input ------------------------------------------------------------


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def parse_complex(value, where):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in value
    ):
        return complex(value[0], value[1])
    raise InputError(f"{where}: expected a number or [re, im], got {value!r}")


def parse_matrix(data, where="matrix"):
    """``{"n": k, "entries": ...}`` with full rows, lower-triangle rows or a flat list."""
    if not isinstance(data, dict) or "n" not in data or "entries" not in data:
        raise InputError(f"{where}: expected an object with fields 'n' and 'entries'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{where}.n: expected a positive integer, got {n!r}")
    rows = data["entries"]
    if not isinstance(rows, list):
        raise InputError(f"{where}.entries: expected an array")
    if len(rows) == n * n and n > 1 and not any(isinstance(r, list) and len(r) != 2 for r in rows):
        rows = [rows[i * n : (i + 1) * n] for i in range(n)]
    if len(rows) != n:
        raise InputError(f"{where}.entries: expected {n} rows, got {len(rows)}")
    m = np.zeros((n, n), dtype=complex)
    given = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not i + 1 <= len(row) <= n:
            raise InputError(f"{where}.entries[{i}]: expected between {i + 1} and {n} entries")
        for j, value in enumerate(row):
            m[i, j] = parse_complex(value, f"{where}.entries[{i}][{j}]")
            given[i, j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if given[i, j] and abs(m[i, j] - np.conj(m[j, i])) > 1e-9:
                raise InputError(
                    f"{where}.entries[{i}][{j}]: upper triangle disagrees with the lower one"
                )
            m[i, j] = np.conj(m[j, i])
        if abs(m[i, i].imag) > 1e-9:
            raise InputError(f"{where}.entries[{i}][{i}]: diagonal must be real")
    return (m + m.conj().T) / 2


def parse_vector(data, where="vector"):
    if isinstance(data, dict):
        if "values" not in data:
            raise InputError(f"{where}: expected an array or an object with field 'values'")
        data = data["values"]
    if not isinstance(data, list) or not data:
        raise InputError(f"{where}: expected a non-empty array of numbers")
    out = []
    for i, value in enumerate(data):
        z = parse_complex(value, f"{where}[{i}]")
        if z.imag != 0:
            raise InputError(f"{where}[{i}]: vector entries must be real")
        out.append(z.real)
    return np.array(out)


def parse_space(data, where="space"):
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    data = dict(data)
    if data.get("kind") == MATRIX and isinstance(data.get("unit"), dict):
        data["unit"] = parse_matrix(data["unit"], f"{where}.unit")
    try:
        return space_from_dict(data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def parse_element(space, data, where):
    if space.kind == MATRIX:
        m = parse_matrix(data, where)
        if m.shape[0] != space.dim:
            raise InputError(f"{where}.n: expected {space.dim}, got {m.shape[0]}")
        return m
    x = parse_vector(data, where)
    if x.size != space.weights.size:
        raise InputError(f"{where}: expected {space.weights.size} entries, got {x.size}")
    return x


# --- JSON output -----------------------------------------------------------


def encode_element(x):
    a = np.asarray(x)
    if a.ndim == 2:
        return {
            "n": a.shape[0],
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
        }
    return [float(t) for t in a]


def _finite(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else "-inf"
    return value


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return _clean(obj.item())
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return _finite(obj)


def emit(report, out):
    out.write(json.dumps(_clean(report)) + "\n")


# --- commands --------------------------------------------------------------


def _spec(args):
    space = parse_space(load_json(args.space))
    try:
        return StateSetSpec(space, args.eps)
    except InfeasibleStateSet as exc:
        raise InputError(f"--eps: {exc}") from exc


def _oracle_fields(args, spec, x, margin, report):
    if not args.oracle:
        return EXIT_OK
    est = oracle_min_pairing(spec, x, budget=args.budget, seed=args.seed)
    ok = est >= margin - 1e-9 and est - margin <= ORACLE_AGREEMENT
    report["oracle"] = {"estimate": est, "agrees": ok, "budget": args.budget}
    return EXIT_OK if ok else EXIT_FAILED


def cmd_member(args):
    spec = _spec(args)
    x = parse_element(spec.space, load_json(args.x), "x")
    cert = cone_member(spec, x, args.tol)
    report = {
        "verdict": cert.verdict,
        "margin": cert.margin,
        "witness": encode_element(cert.witness),
        "tolerance": cert.tolerance,
    }
    return report, _oracle_fields(args, spec, x, cert.margin, report)


def cmd_minpair(args):
    spec = _spec(args)
    x = parse_element(spec.space, load_json(args.x), "x")
    margin, y = min_pairing(spec, x)
    report = {"verdict": "computed", "margin": margin, "witness": encode_element(y), "tolerance": args.tol}
    return report, _oracle_fields(args, spec, x, margin, report)


def cmd_epsnorm(args):
    spec = _spec(args)
    x = parse_element(spec.space, load_json(args.x), "x")
    value = eps_norm(spec, x)
    return {"verdict": "computed", "value": value, "margin": min_pairing(spec, x)[0], "tolerance": args.tol}, EXIT_OK


def cmd_decompose(args):
    spec = _spec(args)
    y = parse_element(spec.space, load_json(args.y), "y")
    try:
        dec = decompose_state(spec, y, tol=max(args.tol, 1e-12))
    except ValueError as exc:
        raise InputError(f"y: {exc}") from exc
    report = {
        "verdict": "computed",
        "s": dec.s,
        "phi": encode_element(dec.phi),
        "psi": None if dec.psi is None else encode_element(dec.psi),
        "reconstruction_defect": dec.defect,
        "tolerance": args.tol,
    }
    return report, EXIT_OK


def cmd_expand(args):
    mu = parse_matrix(load_json(args.mu), "mu")
    exp = decomp.orthogonal_expansion(mu)
    report = {
        "verdict": "computed",
        "mu_plus": encode_element(exp.mu_plus),
        "mu_minus": encode_element(exp.mu_minus),
        "defect": exp.defect,
        "tolerance": args.tol,
    }
    return report, EXIT_OK


def cmd_oscillation(args):
    f = parse_vector(load_json(args.f), "f")
    try:
        omega = epspos.oscillation_of_log(f)
        passes = epspos.has_eps_oscillation(f, args.eps)
        bound = epspos.oscillation_bound(args.eps)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = {"verdict": "pass" if passes else "fail", "omega": omega, "c_eps": bound, "tolerance": args.tol}
    return report, EXIT_OK


def cmd_sample(args):
    spec = _spec(args)
    ys = sample_states(spec, 10 if args.samples is None else args.samples, args.seed)
    return {"verdict": "computed", "count": len(ys), "states": [encode_element(y) for y in ys]}, EXIT_OK


def _weights(text, default):
    if text is None:
        return default
    try:
        return [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--weights: {exc}") from exc


def run_verifier(tid, args):
    s = args.samples
    seed = args.seed
    if tid == "lp2-cone":
        return theorems.verify_lp2_cone(args.p or 2.0, s or 1000, seed, oracle=args.oracle, budget=args.budget)
    if tid == "singleton":
        n = args.n or 3
        p = args.p or 2.0
        return theorems.verify_singleton_state(weighted_lp(p, _weights(args.weights, [1.0] * n)), 50, seed)
    if tid == "comparability":
        c = _weights(args.weights, [1.0, 1.0, 1.0])
        return theorems.verify_comparability(c, args.p or 2.0, args.eps or 1.1, s or 500, seed)
    if tid == "schatten-chain":
        n = args.n or 3
        return theorems.verify_schatten_chain(n, args.p or 2.0, args.eps or n, s or 200, seed)
    if tid == "hilbert":
        return theorems.verify_hilbert_closed_form(args.n or 3, s or 500, seed)
    if tid == "sigma":
        return theorems.sigma_sequence(args.n or 50)
    if tid == "embedding":
        return theorems.verify_embedding(args.n or 3, args.p or 1.0, args.l or 2.0, s or 200, seed)
    if tid == "l1-linf":
        return theorems.l1_vs_linf_demo(args.grid or 1000, args.eps or 2.0)
    if tid == "m4":
        return theorems.verify_m4(seed)
    raise InputError(f"unknown verifier {tid!r}")


def cmd_verify(args):
    try:
        report = run_verifier(args.theorem, args)
    except (ValueError, RuntimeError) as exc:
        raise InputError(f"{args.theorem}: {exc}") from exc
    out = report.to_dict()
    out["verdict"] = "pass" if report.passed else "fail"
    return out, EXIT_OK if report.passed else EXIT_FAILED


def cmd_report_all(args):
    results = []
    for tid, thunk in theorems.default_grid(args.seed, args.samples):
        results.append(thunk().to_dict(timing=False))
    failed = sum(not r["passed"] for r in results)
    report = {"verdict": "pass" if not failed else "fail", "seed": args.seed, "failed": failed, "reports": results}
    return report, EXIT_OK if not failed else EXIT_FAILED


# --- parser ----------------------------------------------------------------


def _exponent(text):
    try:
        return check_exponent(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--samples", type=int, default=None, help="sample count")
    common.add_argument("--budget", type=int, default=10_000, help="oracle sample budget")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="verdict tolerance on the margin")
    common.add_argument("--oracle", action="store_true", help="cross-check solver results with the sampling oracle")

    parser = argparse.ArgumentParser(prog="projpos", description="Projective positivity in weighted l^p and Schatten spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(name, help_, element=None):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--space", required=True, help="space description (JSON)")
        p.add_argument("--eps", type=float, required=True, help="radius of the state set")
        if element:
            p.add_argument(f"--{element}", required=True, help=f"element {element} (JSON)")
        return p

    with_spec("member", "cone membership with certificate", "x").set_defaults(func=cmd_member)
    with_spec("minpair", "support functional m_eps(x) and a minimizing state", "x").set_defaults(func=cmd_minpair)
    with_spec("epsnorm", "eps-norm max |<x, S_eps>|", "x").set_defaults(func=cmd_epsnorm)
    with_spec("decompose", "split a state into (1 + s) phi - s psi", "y").set_defaults(func=cmd_decompose)
    with_spec("sample", "random states of S_eps").set_defaults(func=cmd_sample)

    p = sub.add_parser("expand", parents=[common], help="orthogonal expansion of a hermitian functional")
    p.add_argument("--mu", required=True, help="trace density (JSON matrix)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("oscillation", parents=[common], help="eps-oscillation of ln f on a finite set")
    p.add_argument("--f", required=True, help="nonnegative values (JSON array)")
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=cmd_oscillation)

    p = sub.add_parser("verify", parents=[common], help="run one verifier")
    p.add_argument("theorem", choices=theorems.VERIFIERS)
    p.add_argument("--n", type=int, default=None, help="dimension (sigma: n_max)")
    p.add_argument("--p", type=_exponent, default=None)
    p.add_argument("--l", type=_exponent, default=None, help="larger exponent for the embedding check")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--weights", default=None, help="comma separated weights")
    p.add_argument("--grid", type=int, default=None, help="cells for the l1-linf demo")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report-all", parents=[common], help="run every verifier on the default grid")
    p.set_defaults(func=cmd_report_all)
    return parser


def run(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.samples is not None and args.samples < 0:
        err.write("error: --samples must be nonnegative\n")
        return EXIT_INPUT
    t0 = time.perf_counter()
    try:
        report, code = args.func(args)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    if args.command != "report-all":
        report["elapsed_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
    emit(report, out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
