import numpy as np
import pytest
from hypothesis import settings

from stiffblow.framework import Framework
from stiffblow.graphs import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def random_graph(rng: np.random.Generator, n: int, prob: float = 0.5, min_edges: int = 0) -> Graph:
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob]
        if len(edges) >= min_edges:
            return Graph(n, edges)


def random_instance(rng: np.random.Generator, nmax: int = 8, dmax: int = 3, amax: int = 3,
                    min_edges: int = 0):
    """Random (G, p, a) with |V| <= nmax, d <= dmax, a(v) <= amax, uniform coordinates."""
    d = int(rng.integers(1, dmax + 1))
    n = int(rng.integers(2, nmax + 1))
    G = random_graph(rng, n, float(rng.uniform(0.3, 1.0)), min_edges=min(min_edges, n * (n - 1) // 2))
    p = rng.uniform(0.0, 1.0, size=(n, d))
    a = rng.integers(1, amax + 1, size=n)
    return G, p, a


def random_gap_instance(rng: np.random.Generator, nmax: int = 8, dmax: int = 3, amax: int = 3):
    """Like :func:`random_instance`, redrawn until the base spectral gap is defined."""
    while True:
        G, p, a = random_instance(rng, nmax, dmax, amax, min_edges=1)
        d = p.shape[1]
        if d * G.n > d * (d + 1) // 2:
            return G, p, a


def random_framework(rng: np.random.Generator, nmax: int = 8, dmax: int = 3) -> Framework:
    G, p, _ = random_instance(rng, nmax, dmax)
    return Framework(G, p)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
