"""Derivative-free search for embeddings with a large spectral gap.

Every embedding found is a certificate: its spectral gap is a lower bound on
the d-dimensional algebraic connectivity of the graph.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from stiffblow.errors import InvalidArgument
from stiffblow.framework import Framework, embedding_from_dict, embedding_to_dict
from stiffblow.graphs import Graph
from stiffblow.spectra import spectral_gap

COORD_CAP = 1e8
SIMPLEX_STEP = 0.3
DEFAULT_SEED = 0


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 16
    max_iters: int = 2000
    seed: int = DEFAULT_SEED
    box: float = 1.0
    tol: float = 1e-7

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidArgument("restarts must be >= 1")
        if self.max_iters < 1:
            raise InvalidArgument("max_iters must be >= 1")
        if not self.tol > 0:
            raise InvalidArgument("tol must be positive")
        if not self.box > 0:
            raise InvalidArgument("box must be positive")


def graph_hash(G: Graph) -> str:
    return hashlib.sha256(G.to_json().encode()).hexdigest()


@dataclass(frozen=True, eq=False)
class Certificate:
    """An embedding witnessing a_d(G) >= gap."""

    graph: Graph
    embedding: np.ndarray
    gap: float
    d: int
    graph_hash: str
    history: list[float] = field(default_factory=list, repr=False)

    def recompute(self) -> float:
        return spectral_gap(Framework(self.graph, self.embedding))

    def verify(self, tol: float = 1e-9) -> bool:
        return (
            self.graph_hash == graph_hash(self.graph)
            and self.embedding.shape == (self.graph.n, self.d)
            and abs(self.recompute() - self.gap) <= tol
        )

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "graph_hash": self.graph_hash,
            "d": self.d,
            "gap": self.gap,
            "embedding": embedding_to_dict(self.embedding),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        G = Graph.from_dict(data["graph"])
        p = embedding_from_dict(data["embedding"])
        return cls(G, p, float(data["gap"]), int(data["d"]), str(data["graph_hash"]))


def random_generic_embedding(G: Graph, d: int, seed: int) -> np.ndarray:
    """i.i.d. uniform coordinates in [0, 1); generic with probability one."""
    if d < 1:
        raise InvalidArgument("d must be >= 1")
    return np.random.default_rng(seed).uniform(0.0, 1.0, size=(G.n, d))


class _Tracker:
    """Objective wrapper that remembers the best iterate it has evaluated."""

    def __init__(self, G: Graph, d: int):
        self.G = G
        self.d = d
        self.best_gap = -np.inf
        self.best_x: np.ndarray | None = None
        self.history: list[float] = []

    def __call__(self, x: np.ndarray) -> float:
        x = np.clip(x, -COORD_CAP, COORD_CAP)
        gap = spectral_gap(Framework(self.G, x.reshape(self.G.n, self.d)))
        if gap > self.best_gap:
            self.best_gap = gap
            self.best_x = x.copy()
        self.history.append(self.best_gap)
        return -gap


def _normalize(x: np.ndarray, n: int, d: int) -> np.ndarray:
    # the gap is invariant under translation and uniform scaling
    X = x.reshape(n, d)
    X = X - X.mean(axis=0)
    rms = np.sqrt(np.mean(np.sum(X * X, axis=1)))
    return (X / rms if rms > 0 else X).reshape(-1)


def _run_restart(G: Graph, d: int, x0: np.ndarray, cfg: OptimizerConfig) -> _Tracker:
    track = _Tracker(G, d)
    x = x0.reshape(-1)
    budget = cfg.max_iters
    # Nelder-Mead collapses its simplex on non-smooth ridges; restarting from
    # the incumbent with a fresh simplex lets it keep climbing.
    while budget > 0:
        before = track.best_gap
        x = _normalize(x, G.n, d)
        simplex = np.vstack([x, x + SIMPLEX_STEP * np.eye(x.size)])
        res = minimize(
            track,
            x,
            method="Nelder-Mead",
            options={
                "maxiter": budget,
                "xatol": cfg.tol,
                "fatol": cfg.tol,
                "adaptive": True,
                "initial_simplex": simplex,
            },
        )
        budget -= max(int(res.nit), 1)
        x = track.best_x
        if track.best_gap - before <= cfg.tol:
            break
    return track


def maximize_spectral_gap(G: Graph, d: int, cfg: OptimizerConfig | None = None) -> Certificate:
    """Best spectral gap over Nelder-Mead runs from random starting embeddings."""
    cfg = cfg or OptimizerConfig()
    if d < 1:
        raise InvalidArgument("d must be >= 1")
    if G.n < d + 1:
        raise InvalidArgument(f"need at least d + 1 = {d + 1} vertices, got {G.n}")
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best: _Tracker | None = None
    for child in children:
        rng = np.random.default_rng(child)
        x0 = rng.uniform(-cfg.box, cfg.box, size=(G.n, d))
        track = _run_restart(G, d, x0, cfg)
        if best is None or track.best_gap > best.best_gap:
            best = track
    p = best.best_x.reshape(G.n, d)
    return Certificate(G, p, float(best.best_gap), d, graph_hash(G), best.history)
