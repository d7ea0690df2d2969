"""Eigenvalue sandwich bounds and lower bounds for complete bipartite graphs."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from stiffblow.errors import InvalidArgument, OutOfHypothesis
from stiffblow.framework import Framework, _local_rigidity
from stiffblow.graphs import Graph, as_weights, complete_bipartite
from stiffblow.spectra import eigenvalues_sym, spectral_gap

LOAD_TOL = 1e-6


def ostrowski_check(H, S, tol: float = 1e-9) -> bool:
    """Check that every eigenvalue of S H S^T is a multiple of the matching
    eigenvalue of H by a factor within [lambda_min(S S^T), lambda_max(S S^T)]."""
    H = np.asarray(H, dtype=float)
    S = np.asarray(S, dtype=float)
    if S.shape != H.shape:
        raise InvalidArgument("S and H must be square matrices of the same size")
    if np.linalg.svd(S, compute_uv=False).min() <= tol:
        raise InvalidArgument("S is singular")
    lh = eigenvalues_sym(H).values
    lshs = eigenvalues_sym(0.5 * ((S @ H @ S.T) + (S @ H @ S.T).T)).values
    lss = eigenvalues_sym(S @ S.T).values
    lo = np.minimum(lss[0] * lh, lss[-1] * lh)
    hi = np.maximum(lss[0] * lh, lss[-1] * lh)
    return bool(np.all(lshs - lo >= -tol) and np.all(hi - lshs >= -tol))


def ostrowski_gram_check(A, S, tol: float = 1e-9) -> bool:
    """Same sandwich for A^T S^T S A against A^T A, with A of shape (n, m)."""
    A = np.asarray(A, dtype=float)
    S = np.asarray(S, dtype=float)
    n = A.shape[0]
    if S.shape != (n, n):
        raise InvalidArgument("S must be n x n for A of shape (n, m)")
    if np.linalg.svd(S, compute_uv=False).min() <= tol:
        raise InvalidArgument("S is singular")
    SA = S @ A
    lhs = eigenvalues_sym(SA.T @ SA).values
    base = eigenvalues_sym(A.T @ A).values
    lss = eigenvalues_sym(S @ S.T).values
    return bool(np.all(lhs - lss[0] * base >= -tol) and np.all(lss[-1] * base - lhs >= -tol))


def scaling_constants(G: Graph, f) -> tuple[float, float]:
    """(c, C) with c*lambda_k(L) <= lambda_k(L_f) <= C*lambda_k(L) for all k."""
    if G.m == 0:
        raise InvalidArgument("graph has no edges")
    f = as_weights(f, G.n)
    prods = [f[u] * f[v] for u, v in G.edges]
    return float(min(prods) / f.max()), float(max(prods) / f.min())


def local_scaling_constants(G: Graph, f, v: int) -> tuple[float, float]:
    """(c, C) = extreme weights over the neighbors of ``v``."""
    nb = G.neighbors(v)
    if not nb:
        raise InvalidArgument(f"vertex {v} is isolated")
    f = as_weights(f, G.n)
    w = f[list(nb)]
    return float(w.min()), float(w.max())


def min_local_eigenvalue(fw: Framework) -> float:
    """min over vertices of lambda_1 of the unweighted local stiffness matrix."""
    ones = np.ones(fw.n)
    vals = []
    for v in range(fw.n):
        Rv = _local_rigidity(fw, v, ones)
        vals.append(eigenvalues_sym(Rv @ Rv.T).values[0])
    return float(min(vals))


def base_value(fw: Framework) -> float:
    """min of the spectral gap and the smallest local stiffness eigenvalue."""
    return min(spectral_gap(fw), min_local_eigenvalue(fw))


@dataclass(frozen=True)
class GapBoundReport:
    h: float
    g: float
    base_gap: float
    min_local: float
    bound: float

    def to_dict(self) -> dict:
        return asdict(self)


def blowup_factors(G: Graph, a) -> tuple[float, float]:
    """h(a) = min edge product over max multiplicity; g(a) = min multiplicity."""
    if G.m == 0:
        raise InvalidArgument("graph has no edges")
    a = as_weights(a, G.n, integer=True)
    h = min(a[u] * a[v] for u, v in G.edges) / a.max()
    return float(h), float(a.min())


def blowup_gap_lower_bound(G: Graph, p, a) -> GapBoundReport:
    """Lower bound on the spectral gap of the a-blow-up of (G, p)."""
    h, g = blowup_factors(G, a)
    fw = Framework(G, p)
    base_gap = max(spectral_gap(fw), 0.0)
    min_local = max(min_local_eigenvalue(fw), 0.0)
    return GapBoundReport(h, g, base_gap, min_local, min(h * base_gap, g * min_local))


def bipartite_partition_weights(n: int, m: int, n0: int, m0: int) -> np.ndarray:
    """Multiplicities on K_{n0,m0} whose blow-up is K_{n,m}, as even as possible.

    The first ``n % n0`` vertices of each side receive one extra copy.
    """
    if n0 < 1 or m0 < 1:
        raise InvalidArgument("n0 and m0 must be positive")
    if n < n0 or m < m0:
        raise InvalidArgument(f"need n >= n0 and m >= m0, got ({n}, {m}) vs ({n0}, {m0})")
    q1, r1 = divmod(n, n0)
    q2, r2 = divmod(m, m0)
    side_a = [q1 + 1] * r1 + [q1] * (n0 - r1)
    side_b = [q2 + 1] * r2 + [q2] * (m0 - r2)
    return np.array(side_a + side_b, dtype=float)


@lru_cache(maxsize=None)
def _load_k55(d: int) -> tuple[np.ndarray, float, float, float, float]:
    if d not in (2, 3):
        raise InvalidArgument(f"explicit K_{{5,5}} embeddings exist only for d = 2, 3, got {d}")
    doc = json.loads(resources.files("stiffblow.data").joinpath(f"k55_d{d}.json").read_text())
    p = np.asarray(doc["coords"], dtype=float)
    fw = Framework(complete_bipartite(5, 5), p)
    value = base_value(fw)
    if value < doc["base_value"] - LOAD_TOL:
        raise RuntimeError(
            f"stored K_{{5,5}} embedding for d={d} gives {value}, below {doc['base_value']}"
        )
    p.setflags(write=False)
    return p, float(doc["base_value"]), value, float(doc["bound_slope"]), float(doc["bound_offset"])


def k55_embedding(d: int) -> np.ndarray:
    """Stored K_{5,5} embedding for d = 2 or 3, re-verified on first load."""
    return _load_k55(d)[0]


@dataclass(frozen=True)
class KnmBound:
    n: int
    m: int
    d: int
    bound: float
    linear_bound: float
    base_value: float
    recomputed_base_value: float
    certificate_ok: bool
    blowup_bound: float

    def to_dict(self) -> dict:
        return asdict(self)


def knm_lower_bound(n: int, m: int, d: int) -> KnmBound:
    """Explicit lower bound on a_d(K_{n,m}) for d in {2, 3} and n, m > 10.

    ``bound`` is base * (min(n//5, m//5) - 1), which dominates
    ``linear_bound`` = slope * min(n, m) - offset. ``blowup_bound`` evaluates
    the blow-up gap bound directly on the stored embedding and is never smaller.
    """
    if d not in (2, 3):
        raise InvalidArgument(f"d must be 2 or 3, got {d}")
    if n <= 10 or m <= 10:
        raise OutOfHypothesis(f"bound holds for n, m > 10, got ({n}, {m})")
    p, base, recomputed, slope, offset = _load_k55(d)
    q = min(n // 5, m // 5)
    a = bipartite_partition_weights(n, m, 5, 5)
    rep = blowup_gap_lower_bound(complete_bipartite(5, 5), p, a)
    return KnmBound(
        n=n,
        m=m,
        d=d,
        bound=base * (q - 1),
        linear_bound=slope * min(n, m) - offset,
        base_value=base,
        recomputed_base_value=recomputed,
        certificate_ok=recomputed >= base - LOAD_TOL,
        blowup_bound=rep.bound,
    )
