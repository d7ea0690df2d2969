"""Finite simple graphs, canonical generators and the blow-up construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from stiffblow.errors import InvalidArgument

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v`` in lexicographic order, so
    the column order of every edge-indexed matrix is fixed by the graph.
    """

    n: int
    edges: tuple[Edge, ...]
    _nbrs: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {n}")
        canon = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidArgument(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
            e2 = (min(u, v), max(u, v))
            if e2 in canon:
                raise InvalidArgument(f"duplicate edge {e2}")
            canon.add(e2)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "_nbrs", tuple(tuple(sorted(x)) for x in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of ``v`` in ascending order."""
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            return cls(int(data["n"]), data["edges"])
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed graph JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))


def as_weights(values, n: int, *, integer: bool = False) -> np.ndarray:
    """Validate a per-vertex weight vector and return it as a float array.

    With ``integer=True`` the weights are blow-up multiplicities and must be
    positive integers.
    """
    w = np.asarray(values, dtype=float).reshape(-1)
    if w.shape[0] != n:
        raise InvalidArgument(f"weight vector has length {w.shape[0]}, expected {n}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise InvalidArgument("weights must be finite and strictly positive")
    if integer and np.any(w != np.round(w)):
        raise InvalidArgument("blow-up multiplicities must be integers")
    return w


def weights_to_dict(values) -> dict:
    return {"values": [float(x) for x in np.asarray(values, dtype=float)]}


def weights_from_dict(data: dict) -> np.ndarray:
    try:
        return np.asarray(data["values"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument(f"malformed weight JSON: {exc}") from exc


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidArgument(f"complete_graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(n: int, m: int) -> Graph:
    """K_{n,m} with side A = ``0..n-1`` and side B = ``n..n+m-1``."""
    if n < 1 or m < 1:
        raise InvalidArgument(f"complete_bipartite needs n, m >= 1, got ({n}, {m})")
    return Graph(n + m, ((i, n + j) for i in range(n) for j in range(m)))


def generalized_star(n: int, d: int) -> Graph:
    """Graph on ``0..n-1`` where each hub vertex ``i < d`` is joined to all others."""
    if d < 1 or n <= d:
        raise InvalidArgument(f"generalized_star needs n >= d + 1 >= 2, got (n, d) = ({n}, {d})")
    edges = {(min(i, j), max(i, j)) for i in range(d) for j in range(n) if j != i}
    return Graph(n, edges)


@dataclass(frozen=True)
class BlowupIndex:
    """Bijection between copies ``(v, i)``, ``0 <= i < a(v)``, and blown-up ids.

    Copies of a vertex are contiguous and vertices appear in ascending order.
    """

    counts: tuple[int, ...]

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.counts)]).astype(int)

    @property
    def size(self) -> int:
        return int(sum(self.counts))

    def forward(self, v: int, i: int) -> int:
        if not 0 <= i < self.counts[v]:
            raise InvalidArgument(f"copy index {i} out of range for vertex {v}")
        return int(self.offsets[v]) + i

    def inverse(self, k: int) -> tuple[int, int]:
        if not 0 <= k < self.size:
            raise InvalidArgument(f"blown-up id {k} out of range")
        v = int(np.searchsorted(self.offsets, k, side="right")) - 1
        return v, k - int(self.offsets[v])

    def origin(self) -> np.ndarray:
        """Original vertex of every blown-up id."""
        return np.repeat(np.arange(len(self.counts)), self.counts)


def blow_up(G: Graph, a) -> tuple[Graph, BlowupIndex]:
    """Replace every vertex ``v`` by an independent set of ``a[v]`` copies."""
    a = as_weights(a, G.n, integer=True).astype(int)
    idx = BlowupIndex(tuple(int(x) for x in a))
    off = idx.offsets
    edges = [
        (off[u] + i, off[v] + j)
        for u, v in G.edges
        for i in range(a[u])
        for j in range(a[v])
    ]
    return Graph(idx.size, edges), idx


def blow_up_embedding(p, a, idx: BlowupIndex) -> np.ndarray:
    """Place every copy ``(v, i)`` at ``p[v]``."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 2:
        raise InvalidArgument("embedding must be a 2-D array of shape (n, d)")
    a = as_weights(a, p.shape[0], integer=True).astype(int)
    if tuple(a) != idx.counts:
        raise InvalidArgument("blow-up index does not match the multiplicities")
    return p[idx.origin()].copy()
