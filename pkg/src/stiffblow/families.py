"""Special frameworks: the K_{3,3} family and its limit, the midpoint
embedding of K_{3,3}, and the coordinate embedding of generalized stars.

K_{3,3} here has sides {0, 2, 4} and {1, 3, 5}, so the lexicographic edge
order is 01, 03, 05, 12, 14, 23, 25, 34, 45. The closed-form limit matrix
uses the order 01, 23, 45, 25, 34, 03, 05, 12, 14 instead; ``LIMIT_ORDER``
maps between the two.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from stiffblow.errors import InvalidArgument
from stiffblow.framework import Framework
from stiffblow.graphs import Graph, generalized_star
from stiffblow.roots import real_roots
from stiffblow.spectra import Spectrum

QUARTIC = (176.0, -200.0, 47.0, 18.0, -9.0)

LIMIT_EDGES = ((0, 1), (2, 3), (4, 5), (2, 5), (3, 4), (0, 3), (0, 5), (1, 2), (1, 4))

MIDPOINT_SPECTRUM = (0.0, 0.0, 0.0, 0.5, 0.5, 0.5, 1.5, 1.5, 2.5, 3.0, 4.0, 4.0)


def k33_graph() -> Graph:
    return Graph(6, ((i, j) for i in (0, 2, 4) for j in (1, 3, 5)))


def _limit_order() -> np.ndarray:
    index = k33_graph().edge_index()
    return np.array([index[e] for e in LIMIT_EDGES])


LIMIT_ORDER = _limit_order()


def to_limit_order(M) -> np.ndarray:
    """Permute an edge-indexed K_{3,3} matrix from lexicographic to limit order."""
    M = np.asarray(M)
    return M[np.ix_(LIMIT_ORDER, LIMIT_ORDER)]


def k33_embedding(alpha: float, beta: float, c: float) -> Framework:
    """Embedding of K_{3,3}: vertices 0, 2, 4 on a scaled triangle, each
    matched vertex 1, 3, 5 at unit distance from its partner."""
    if not (0 < alpha < np.pi / 2 and 0 < beta < np.pi / 2):
        raise InvalidArgument("alpha and beta must lie in (0, pi/2)")
    if not c > 0:
        raise InvalidArgument("c must be positive")
    p0 = c * np.array([np.cos(alpha), 0.0])
    p2 = c * np.array([0.0, np.sin(alpha)])
    p4 = c * np.array([0.0, -np.sin(alpha)])
    p = np.array([
        p0,
        p0 + [1.0, 0.0],
        p2,
        p2 + [np.cos(beta), np.sin(beta)],
        p4,
        p4 + [np.cos(beta), -np.sin(beta)],
    ])
    return Framework(k33_graph(), p)


@dataclass(frozen=True)
class K33LimitParams:
    """a = sin(alpha), b = sin(beta), both in (0, 1)."""

    a: float
    b: float

    def __post_init__(self):
        if not (0 < self.a < 1 and 0 < self.b < 1):
            raise InvalidArgument(f"need 0 < a, b < 1, got ({self.a}, {self.b})")

    @classmethod
    def from_angles(cls, alpha: float, beta: float) -> "K33LimitParams":
        return cls(float(np.sin(alpha)), float(np.sin(beta)))

    @property
    def f(self) -> float:
        a, b = self.a, self.b
        return float(np.sqrt((1 - a * a) * (1 - b * b)) - a * b)


def k33_limit_lower_stiffness(params: K33LimitParams) -> np.ndarray:
    """Entrywise limit as c -> inf of the lower stiffness matrix of
    :func:`k33_embedding`, rows and columns in ``LIMIT_EDGES`` order."""
    a, b, f = params.a, params.b, params.f
    s = np.sqrt(1 - a * a)
    t = 1 - 2 * a * a
    return np.array([
        [2, 0, 0, 0, 0, -s, -s, s, s],
        [0, 2, 0, -b, b, -f, 0, f, 0],
        [0, 0, 2, b, -b, 0, -f, 0, f],
        [0, -b, b, 2, 0, 0, a, a, 0],
        [0, b, -b, 0, 2, a, 0, 0, a],
        [-s, -f, 0, 0, a, 2, t, 0, 0],
        [-s, 0, -f, a, 0, t, 2, 0, 0],
        [s, f, 0, a, 0, 0, 0, 2, t],
        [s, 0, f, 0, a, 0, 0, t, 2],
    ], dtype=float)


def k33_char_polys(params: K33LimitParams) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients (highest first) of the quadratic and cubic factors."""
    a2, b2, f2 = params.a ** 2, params.b ** 2, params.f ** 2
    p1 = np.array([1.0, 2 * a2 - 5, -2 * f2 + 2])
    p2 = np.array([1.0, -(2 * a2 + 5), 2 * (3 * a2 - 2 * b2 - f2 + 4), 8 * a2 * (b2 - 1)])
    return p1, p2


def _roots_exact(coeffs: np.ndarray, count: int) -> list[float]:
    # eigenvalues of a PSD matrix with diagonal 2 and |entries| <= 1 lie in [0, 10]
    roots = real_roots(coeffs, -1.0, 10.0, tol=1e-11)
    if len(roots) == count - 1:
        # a double root shows up once; find which one carries the multiplicity
        dr = real_roots(np.polyder(coeffs), -1.0, 10.0, tol=1e-9)
        for r in roots:
            if any(abs(r - x) < 1e-6 for x in dr):
                roots = sorted([*roots, r])
                break
    if len(roots) != count:
        raise ArithmeticError(f"expected {count} real roots, found {roots}")
    return roots


def k33_limit_spectrum(params: K33LimitParams) -> Spectrum:
    """Closed-form spectrum of :func:`k33_limit_lower_stiffness`."""
    a2 = params.a ** 2
    p1, p2 = k33_char_polys(params)
    vals = [2 * (1 - a2), 1 + 2 * a2, 2.0, 3.0, *_roots_exact(p1, 2), *_roots_exact(p2, 3)]
    return Spectrum(np.array(vals))


@dataclass(frozen=True)
class OptimalConstants:
    lam: float
    a0: float
    b0: float
    gap: float

    def to_dict(self) -> dict:
        return asdict(self)


def k33_optimal_constants() -> OptimalConstants:
    """Root of the quartic in (0, 1) and the optimal limit parameters."""
    roots = real_roots(QUARTIC, 0.0, 1.0, tol=1e-14)
    if len(roots) != 1:
        raise ArithmeticError(f"expected a unique root in (0, 1), found {roots}")
    lam = roots[0]
    a0 = np.sqrt(lam)
    b0 = np.sqrt(6 * a0 ** 4 - 8 * a0 ** 2 + 3 + 2 * a0 * (a0 ** 2 - 1) * np.sqrt(9 * a0 ** 2 - 6))
    return OptimalConstants(lam=float(lam), a0=float(a0), b0=float(b0), gap=float(2 * (1 - lam)))


def midpoint_embedding(scale: float = 1.0) -> Framework:
    """K_{3,3} with 0, 2, 4 on an equilateral triangle of side ``2*scale`` and
    1, 3, 5 on the midpoints of sides 02, 24, 04."""
    x1 = scale * np.array([0.0, np.sqrt(3.0)])
    x2 = scale * np.array([-1.0, 0.0])
    x3 = scale * np.array([1.0, 0.0])
    p = np.array([x1, (x1 + x2) / 2, x2, (x2 + x3) / 2, x3, (x1 + x3) / 2])
    return Framework(k33_graph(), p)


def star_embedding(n: int, d: int) -> Framework:
    """Hub ``i < d`` at the i-th basis vector, every other vertex at the origin."""
    G = generalized_star(n, d)
    p = np.zeros((n, d))
    p[np.arange(d), np.arange(d)] = 1.0
    return Framework(G, p)


def star_spectrum_formula(n: int, d: int) -> Spectrum:
    if d < 1 or n <= d:
        raise InvalidArgument(f"need n >= d + 1 >= 2, got (n, d) = ({n}, {d})")
    t = comb(d + 1, 2)
    vals = [0.0] * t + [1.0] * (d * n - t - d) + [n - d / 2] * (d - 1) + [float(n)]
    return Spectrum(np.array(vals))
