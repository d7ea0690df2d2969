"""Recomputation of every reference constant and explicit spectrum.

Each check returns a :class:`Check` row; :func:`run_suite` collects them.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from stiffblow.blowup import uniform_blowup_gap_scaling
from stiffblow.bounds import base_value, k55_embedding, knm_lower_bound
from stiffblow.families import (
    MIDPOINT_SPECTRUM,
    K33LimitParams,
    k33_graph,
    k33_limit_lower_stiffness,
    k33_optimal_constants,
    midpoint_embedding,
    star_embedding,
    star_spectrum_formula,
)
from stiffblow.framework import Framework, stiffness
from stiffblow.graphs import complete_bipartite, complete_graph
from stiffblow.optimizer import OptimizerConfig, maximize_spectral_gap
from stiffblow.spectra import Spectrum, eigenvalues_sym, max_pairwise_gap


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    expected: float
    tol: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _close(name: str, value: float, expected: float, tol: float, note: str = "") -> Check:
    return Check(name, float(value), float(expected), tol, bool(abs(value - expected) <= tol), note)


def _at_least(name: str, value: float, floor: float, tol: float, note: str = "") -> Check:
    return Check(name, float(value), float(floor), tol, bool(value >= floor - tol), note)


def check_k55(d: int) -> Check:
    floor = {2: 1.39, 3: 0.309}[d]
    fw = Framework(complete_bipartite(5, 5), k55_embedding(d))
    return _at_least(f"k55_base_value_d{d}", base_value(fw), floor, 1e-6, "value >= expected - tol")


def check_knm_linear(d: int, n: int = 100) -> Check:
    rep = knm_lower_bound(n, n, d)
    return _at_least(f"knm_bound_dominates_linear_d{d}_n{n}", rep.bound, rep.linear_bound, 0.0,
                     "block bound >= slope*min(n,m) - offset")


def check_quartic() -> list[Check]:
    oc = k33_optimal_constants()
    return [
        _close("quartic_root_lambda", oc.lam, 0.6903845, 1e-6),
        _close("a0", oc.a0, 0.830893, 1e-5),
        _close("b0", oc.b0, 0.314632, 1e-5),
    ]


def check_k33_limit_gap() -> Check:
    oc = k33_optimal_constants()
    M = k33_limit_lower_stiffness(K33LimitParams(oc.a0, oc.b0))
    lam1 = eigenvalues_sym(M).values[0]
    return _close("k33_limit_lambda1", lam1, 0.6192309, 1e-6, f"2(1-lambda) = {oc.gap!r}")


def check_midpoint() -> Check:
    S = eigenvalues_sym(stiffness(midpoint_embedding()))
    gap = max_pairwise_gap(S, Spectrum(np.array(MIDPOINT_SPECTRUM)))
    return _close("midpoint_spectrum_max_gap", gap, 0.0, 1e-8)


def check_star(n: int, d: int) -> Check:
    direct = eigenvalues_sym(stiffness(star_embedding(n, d)))
    gap = max_pairwise_gap(direct, star_spectrum_formula(n, d))
    return _close(f"star_spectrum_n{n}_d{d}", gap, 0.0, 1e-8)


def check_laplacian_d1(seed: int = 0) -> Check:
    G = complete_bipartite(2, 3)
    p = np.random.default_rng(seed).uniform(size=(G.n, 1))
    lap = np.diag([G.degree(v) for v in range(G.n)]).astype(float)
    for u, v in G.edges:
        lap[u, v] = lap[v, u] = -1.0
    err = float(np.max(np.abs(stiffness(Framework(G, p)) - lap)))
    return _close("stiffness_d1_is_laplacian", err, 0.0, 1e-12)


def check_uniform_scaling(seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in (3, 4):
        gaps = dict(uniform_blowup_gap_scaling(complete_graph(n), rng.uniform(size=(n, 2)), 5))
        for k, g in gaps.items():
            worst = max(worst, abs(g / gaps[2] - k / 2) / (k / 2))
    return _close("uniform_blowup_gap_ratio_rel_err", worst, 0.0, 1e-8)


def check_optimizer() -> list[Check]:
    cfg = OptimizerConfig()
    rows = []
    for n in (4, 5, 6):
        g1 = maximize_spectral_gap(complete_graph(n), 1, cfg).gap
        rows.append(_at_least(f"optimizer_K{n}_d1", g1, 0.99 * n, 0.0, "target 0.99 n"))
        g2 = maximize_spectral_gap(complete_graph(n), 2, cfg).gap
        rows.append(_at_least(f"optimizer_K{n}_d2", g2, 0.95 * n / 2, 0.0, "target 0.95 n/2"))
    g = maximize_spectral_gap(k33_graph(), 2, cfg).gap
    rows.append(_at_least("optimizer_K33_d2", g, 0.60, 0.0, "target 0.60"))
    return rows


def run_suite(include_optimizer: bool = True) -> list[Check]:
    steps: list[Callable[[], Check | list[Check]]] = [
        check_laplacian_d1,
        check_uniform_scaling,
        lambda: check_k55(2),
        lambda: check_k55(3),
        lambda: check_knm_linear(2),
        lambda: check_knm_linear(3),
        check_quartic,
        check_k33_limit_gap,
        check_midpoint,
        lambda: check_star(4, 1),
        lambda: check_star(4, 3),
    ]
    if include_optimizer:
        steps.append(check_optimizer)
    rows: list[Check] = []
    for step in steps:
        out = step()
        rows.extend(out if isinstance(out, list) else [out])
    return rows
