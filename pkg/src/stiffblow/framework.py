"""Frameworks and their rigidity, stiffness and lower stiffness matrices.

Rows of a rigidity matrix are vertex-major, axis-minor: row ``u*d + i`` is
the pair ``(u, i)``. Columns follow the graph's lexicographic edge order.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from stiffblow.errors import InvalidArgument
from stiffblow.graphs import Graph, as_weights

COINCIDENCE_RTOL = 1e-14


@dataclass(frozen=True, eq=False)
class Framework:
    graph: Graph
    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim == 1:
            p = p.reshape(-1, 1)
        if p.ndim != 2 or p.shape[1] < 1:
            raise InvalidArgument("embedding must have shape (n, d) with d >= 1")
        if p.shape[0] != self.graph.n:
            raise InvalidArgument(
                f"embedding has {p.shape[0]} points but the graph has {self.graph.n} vertices"
            )
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def d(self) -> int:
        return self.p.shape[1]

    @property
    def n(self) -> int:
        return self.graph.n


def embedding_to_dict(p) -> dict:
    p = np.asarray(p, dtype=float)
    return {"d": int(p.shape[1]), "coords": p.tolist()}


def embedding_from_dict(data: dict) -> np.ndarray:
    try:
        d = int(data["d"])
        coords = np.asarray(data["coords"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument(f"malformed embedding JSON: {exc}") from exc
    if coords.size == 0:
        coords = coords.reshape(0, d)
    if coords.ndim != 2 or coords.shape[1] != d or d < 1:
        raise InvalidArgument(f"embedding coordinates do not all have d = {d} entries")
    return coords


def _coincident(x: np.ndarray, y: np.ndarray) -> bool:
    return np.linalg.norm(x - y) <= COINCIDENCE_RTOL * (1 + np.linalg.norm(x) + np.linalg.norm(y))


def direction(p, u: int, v: int) -> np.ndarray:
    """Unit vector from ``p[v]`` towards ``p[u]``; zero if the points coincide."""
    if u == v:
        raise InvalidArgument("direction needs two distinct vertices")
    p = np.asarray(p, dtype=float)
    diff = p[u] - p[v]
    if _coincident(p[u], p[v]):
        return np.zeros_like(diff)
    return diff / np.linalg.norm(diff)


def _edge_directions(fw: Framework) -> np.ndarray:
    """Row ``k`` is d_{uv} for the k-th edge (u, v), u < v."""
    if fw.graph.m == 0:
        return np.zeros((0, fw.d))
    E = np.asarray(fw.graph.edges)
    pu, pv = fw.p[E[:, 0]], fw.p[E[:, 1]]
    diff = pu - pv
    norm = np.linalg.norm(diff, axis=1)
    scale = 1 + np.linalg.norm(pu, axis=1) + np.linalg.norm(pv, axis=1)
    keep = norm > COINCIDENCE_RTOL * scale
    out = np.zeros_like(diff)
    out[keep] = diff[keep] / norm[keep, None]
    return out


def _weights(fw: Framework, f) -> np.ndarray:
    if f is None:
        return np.ones(fw.n)
    return as_weights(f, fw.n)


def rigidity_matrix(fw: Framework, f=None) -> np.ndarray:
    """Weighted rigidity matrix R_f, of shape (d|V|, |E|).

    Entry ``((u, i), {u, v})`` is ``sqrt(f[v]) * d_uv[i]``; ``f=None`` means
    unit weights.
    """
    w = np.sqrt(_weights(fw, f))
    n, d, m = fw.n, fw.d, fw.graph.m
    R = np.zeros((n * d, m))
    if m == 0:
        return R
    E = np.asarray(fw.graph.edges)
    D = _edge_directions(fw)
    cols = np.arange(m)
    for i in range(d):
        R[E[:, 0] * d + i, cols] = w[E[:, 1]] * D[:, i]
        R[E[:, 1] * d + i, cols] = -w[E[:, 0]] * D[:, i]
    return R


def _gram(A: np.ndarray) -> np.ndarray:
    M = A @ A.T
    return 0.5 * (M + M.T)


def stiffness(fw: Framework, f=None) -> np.ndarray:
    """L_f = R_f R_f^T."""
    return _gram(rigidity_matrix(fw, f))


def lower_stiffness(fw: Framework, f=None) -> np.ndarray:
    """Edge-indexed Gram matrix R_f^T R_f."""
    return _gram(rigidity_matrix(fw, f).T)


def _local_rigidity(fw: Framework, v: int, w: np.ndarray) -> np.ndarray:
    nb = fw.graph.neighbors(v)
    if not nb:
        return np.zeros((fw.d, 0))
    return np.column_stack([np.sqrt(w[u]) * direction(fw.p, v, u) for u in nb])


def local_rigidity_matrix(fw: Framework, v: int, f=None) -> np.ndarray:
    """d x deg(v) matrix whose column for neighbor u is sqrt(f[u]) * d_vu."""
    if fw.graph.degree(v) == 0:
        raise InvalidArgument(f"vertex {v} is isolated")
    return _local_rigidity(fw, v, _weights(fw, f))


def local_stiffness(fw: Framework, v: int, f=None) -> np.ndarray:
    return _gram(local_rigidity_matrix(fw, v, f))


def local_lower_stiffness(fw: Framework, v: int, f=None) -> np.ndarray:
    return _gram(local_rigidity_matrix(fw, v, f).T)


def edge_angle_cos(p, e, e2) -> float:
    """Cosine of the angle at the shared vertex of two incident edges.

    Returns exactly 0 when either direction vanishes.
    """
    shared = set(e) & set(e2)
    if len(shared) != 1 or len(set(e)) != 2 or len(set(e2)) != 2:
        raise InvalidArgument(f"edges {tuple(e)} and {tuple(e2)} must share exactly one vertex")
    (u,) = shared
    (v,) = set(e) - shared
    (w,) = set(e2) - shared
    c = float(np.dot(direction(p, u, v), direction(p, u, w)))
    return min(1.0, max(-1.0, c))


def lower_stiffness_closed_form(fw: Framework, f=None) -> np.ndarray:
    """Lower stiffness matrix assembled entry by entry from edge angles.

    Independent of :func:`rigidity_matrix`; used to cross-check it.
    """
    w = _weights(fw, f)
    edges = fw.graph.edges
    m = len(edges)
    M = np.zeros((m, m))
    for a, (u, v) in enumerate(edges):
        if not _coincident(fw.p[u], fw.p[v]):
            M[a, a] = w[u] + w[v]
        for b in range(a + 1, m):
            e2 = edges[b]
            shared = {u, v} & set(e2)
            if len(shared) != 1:
                continue
            (s,) = shared
            x = v if s == u else u
            y = e2[0] if e2[1] == s else e2[1]
            M[a, b] = M[b, a] = np.sqrt(w[x] * w[y]) * edge_angle_cos(fw.p, (u, v), e2)
    return M


def apply_stiffness(fw: Framework, f, phi) -> np.ndarray:
    """Matrix-free product L_f @ phi, summing rank-one terms over neighbors."""
    w = _weights(fw, f)
    d = fw.d
    phi = np.asarray(phi, dtype=float).reshape(-1)
    if phi.shape[0] != d * fw.n:
        raise InvalidArgument(f"vector has length {phi.shape[0]}, expected {d * fw.n}")
    X = phi.reshape(fw.n, d)
    out = np.zeros_like(X)
    for u in range(fw.n):
        for v in fw.graph.neighbors(u):
            duv = direction(fw.p, u, v)
            out[u] += duv * np.dot(duv, w[v] * X[u] - np.sqrt(w[v] * w[u]) * X[v])
    return out.reshape(-1)


def weight_factorization_check(fw: Framework, f, tol: float = 1e-10) -> bool:
    """Check R_f = Dhat R Dtilde globally and R^v_f = R^v D^v locally."""
    w = _weights(fw, f)
    d = fw.d
    R = rigidity_matrix(fw)
    Dhat = np.diag(np.repeat(1.0 / np.sqrt(w), d))
    Dtil = np.diag([np.sqrt(w[u] * w[v]) for u, v in fw.graph.edges])
    if not np.allclose(rigidity_matrix(fw, w), Dhat @ R @ Dtil, rtol=0, atol=tol):
        return False
    for v in range(fw.n):
        nb = fw.graph.neighbors(v)
        if not nb:
            continue
        Dv = np.diag(np.sqrt(w[list(nb)]))
        if not np.allclose(local_rigidity_matrix(fw, v, w), local_rigidity_matrix(fw, v) @ Dv,
                           rtol=0, atol=tol):
            return False
    return True


def matrix_to_csv(M) -> str:
    buf = io.StringIO()
    np.savetxt(buf, np.atleast_2d(np.asarray(M, dtype=float)), fmt="%.17g", delimiter=",")
    return buf.getvalue()


def matrix_to_json(M) -> str:
    return json.dumps({"rows": np.asarray(M, dtype=float).tolist()})
