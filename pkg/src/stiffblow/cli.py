"""Command-line interface. Every subcommand prints one JSON document.

Exit codes: 0 success, 1 a verification failed, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from stiffblow.blowup import blown_up_framework, blowup_spectrum_rhs, verify_blowup_theorem
from stiffblow.bounds import blowup_gap_lower_bound, knm_lower_bound
from stiffblow.errors import InvalidArgument
from stiffblow.families import (
    MIDPOINT_SPECTRUM,
    K33LimitParams,
    k33_embedding,
    k33_limit_lower_stiffness,
    k33_limit_spectrum,
    k33_optimal_constants,
    midpoint_embedding,
    star_embedding,
    star_spectrum_formula,
    to_limit_order,
)
from stiffblow.framework import (
    Framework,
    embedding_from_dict,
    lower_stiffness,
    matrix_to_csv,
    stiffness,
)
from stiffblow.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    generalized_star,
    weights_from_dict,
)
from stiffblow.optimizer import DEFAULT_SEED, OptimizerConfig, maximize_spectral_gap
from stiffblow.reference_checks import run_suite
from stiffblow.spectra import (
    DEFAULT_TOL,
    Spectrum,
    eigenvalues_sym,
    max_pairwise_gap,
    spectral_gap,
)

SHORTHAND = re.compile(r"^(K|S)(\d+)(?:,(\d+))?$")


class VerificationFailed(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidArgument(f"cannot read {path}: {exc}") from exc


def load_graph(spec: str) -> Graph:
    """Graph from a JSON file, or a shorthand: ``K5``, ``K3,3`` or ``S6,2``."""
    m = SHORTHAND.match(spec)
    if m and not Path(spec).exists():
        kind, x, y = m.group(1), int(m.group(2)), m.group(3)
        if kind == "K":
            return complete_graph(x) if y is None else complete_bipartite(x, int(y))
        if y is None:
            raise InvalidArgument("star shorthand needs S<n>,<d>")
        return generalized_star(x, int(y))
    return Graph.from_dict(_load_json(spec))


def load_embedding(path: str) -> np.ndarray:
    return embedding_from_dict(_load_json(path))


def load_weights(spec: str) -> np.ndarray:
    """Weights as ``1,2,3`` or a path to ``{"values": [...]}``."""
    if Path(spec).exists():
        return weights_from_dict(_load_json(spec))
    try:
        return np.array([float(x) for x in spec.split(",")])
    except ValueError as exc:
        raise InvalidArgument(f"cannot parse weights {spec!r}") from exc


def _framework(args) -> Framework:
    return Framework(load_graph(args.graph), load_embedding(args.p))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def cmd_spectrum(args) -> None:
    fw = _framework(args)
    f = load_weights(args.f) if args.f else None
    M = stiffness(fw, f) if args.cmd == "spectrum" else lower_stiffness(fw, f)
    if args.csv:
        sys.stdout.write(matrix_to_csv(M))
        return
    S = eigenvalues_sym(M, args.tol)
    out = S.to_dict()
    if args.cmd == "spectrum":
        out["spectral_gap"] = spectral_gap(fw, f)
    _emit(out)


def cmd_blowup_verify(args) -> None:
    G = load_graph(args.graph)
    rep = verify_blowup_theorem(G, load_embedding(args.p), load_weights(args.a), args.tol)
    _emit(rep.to_dict())
    if not rep.equal:
        raise VerificationFailed(f"spectra differ by {rep.max_pairwise_gap}")


def cmd_blowup_rhs(args) -> None:
    G = load_graph(args.graph)
    S = blowup_spectrum_rhs(G, load_embedding(args.p), load_weights(args.a))
    _emit(Spectrum(S.values, args.tol).to_dict())


def cmd_gap_bound(args) -> None:
    G = load_graph(args.graph)
    p = load_embedding(args.p)
    a = load_weights(args.a)
    rep = blowup_gap_lower_bound(G, p, a)
    actual = spectral_gap(blown_up_framework(G, p, a))
    valid = rep.bound <= actual + 1e-8
    _emit({**rep.to_dict(), "blowup_gap": actual, "valid": valid})
    if not valid:
        raise VerificationFailed("bound exceeds the blow-up spectral gap")


def cmd_knm_bound(args) -> None:
    rep = knm_lower_bound(args.n, args.m, args.d)
    _emit(rep.to_dict())
    if not rep.certificate_ok:
        raise VerificationFailed("stored embedding no longer certifies its base value")


def cmd_k33(args) -> None:
    fw = k33_embedding(args.alpha, args.beta, args.c)
    params = K33LimitParams.from_angles(args.alpha, args.beta)
    limit = k33_limit_lower_stiffness(params)
    finite = to_limit_order(lower_stiffness(fw))
    _emit({
        "params": {"a": params.a, "b": params.b, "f": params.f},
        "embedding": fw.p.tolist(),
        "stiffness_spectrum": eigenvalues_sym(stiffness(fw)).to_dict(),
        "spectral_gap": spectral_gap(fw),
        "limit_spectrum": k33_limit_spectrum(params).to_dict(),
        "limit_entry_distance": float(np.max(np.abs(finite - limit))),
    })


def cmd_k33_optimal(args) -> None:
    oc = k33_optimal_constants()
    lam1 = eigenvalues_sym(k33_limit_lower_stiffness(K33LimitParams(oc.a0, oc.b0))).values[0]
    _emit({**oc.to_dict(), "limit_lambda1": float(lam1)})


def cmd_midpoint(args) -> None:
    S = eigenvalues_sym(stiffness(midpoint_embedding(args.scale)), args.tol)
    gap = max_pairwise_gap(S, Spectrum(np.array(MIDPOINT_SPECTRUM)))
    _emit({**S.to_dict(), "expected": list(MIDPOINT_SPECTRUM), "max_pairwise_gap": gap,
           "match": gap <= args.tol})
    if gap > args.tol:
        raise VerificationFailed("midpoint spectrum mismatch")


def cmd_star(args) -> None:
    formula = star_spectrum_formula(args.n, args.d)
    direct = eigenvalues_sym(stiffness(star_embedding(args.n, args.d)), args.tol)
    gap = max_pairwise_gap(formula, direct)
    _emit({**Spectrum(formula.values, args.tol).to_dict(), "direct": direct.values.tolist(),
           "max_pairwise_gap": gap, "match": gap <= args.tol})
    if gap > args.tol:
        raise VerificationFailed("star spectrum formula disagrees with direct computation")


def cmd_optimize(args) -> None:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("RIG_SEED", DEFAULT_SEED))
    cfg = OptimizerConfig(restarts=args.restarts, max_iters=args.max_iters, seed=seed)
    cert = maximize_spectral_gap(load_graph(args.graph), args.d, cfg)
    _emit({**cert.to_dict(), "seed": seed})


def cmd_reference_suite(args) -> None:
    rows = run_suite(include_optimizer=not args.skip_optimizer)
    _emit({"checks": [r.to_dict() for r in rows], "all_passed": all(r.passed for r in rows)})
    for r in rows:
        sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  {r.value!r}\n")
    if not all(r.passed for r in rows):
        raise VerificationFailed("reference checks failed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stiffblow", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        return p

    for name in ("spectrum", "lower-spectrum"):
        p = add(name, cmd_spectrum, f"{name.replace('-', ' ')} of a framework")
        p.add_argument("--graph", required=True)
        p.add_argument("--p", required=True, help="embedding JSON")
        p.add_argument("--f", help="vertex weights")
        p.add_argument("--csv", action="store_true", help="print the matrix as CSV instead")

    for name, fn, help_ in (
        ("blowup-verify", cmd_blowup_verify, "compare direct and predicted blow-up spectra"),
        ("blowup-rhs", cmd_blowup_rhs, "predicted blow-up spectrum"),
        ("gap-bound", cmd_gap_bound, "lower bound on the blow-up spectral gap"),
    ):
        p = add(name, fn, help_)
        p.add_argument("--graph", required=True)
        p.add_argument("--p", required=True)
        p.add_argument("--a", required=True, help="multiplicities, e.g. 2,1,3")

    p = add("knm-bound", cmd_knm_bound, "explicit lower bound on a_d(K_{n,m}), d = 2, 3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("k33", cmd_k33, "the two-scale K_{3,3} embedding and its limit")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--c", type=float, required=True)

    add("k33-optimal", cmd_k33_optimal, "optimal limit constants for K_{3,3}")

    p = add("midpoint-spectrum", cmd_midpoint, "stiffness spectrum of the midpoint K_{3,3}")
    p.add_argument("--scale", type=float, default=1.0)

    p = add("star", cmd_star, "generalized star spectrum, formula and direct")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("optimize", cmd_optimize, "search for an embedding with a large spectral gap")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help="default: $RIG_SEED or 0")
    p.add_argument("--restarts", type=int, default=OptimizerConfig.restarts)
    p.add_argument("--max-iters", type=int, default=OptimizerConfig.max_iters)

    p = add("paper-suite", cmd_reference_suite, "recompute every reference constant and spectrum")
    p.add_argument("--skip-optimizer", action="store_true")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.fn(args)
    except VerificationFailed as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return 1
    except InvalidArgument as exc:
        sys.stderr.write(f"invalid argument: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
