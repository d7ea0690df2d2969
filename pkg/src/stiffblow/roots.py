"""Real roots of low-degree polynomials by derivative-based isolation.

Critical points split ``[lo, hi]`` into monotone pieces, each holding at most
one simple root, found by bisection and polished with Newton steps. Critical
points where the polynomial itself vanishes are reported as multiple roots.
"""

from __future__ import annotations

import numpy as np


def _polyval(c: np.ndarray, x: float) -> float:
    return float(np.polyval(c, x))


def _bisect(c: np.ndarray, lo: float, hi: float) -> float:
    flo = _polyval(c, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = _polyval(c, mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 1e-15 * (1.0 + abs(mid)):
            break
    return 0.5 * (lo + hi)


def _polish(c: np.ndarray, dc: np.ndarray, x: float, lo: float, hi: float) -> float:
    fx = abs(_polyval(c, x))
    for _ in range(3):
        slope = _polyval(dc, x)
        if slope == 0.0:
            break
        y = x - _polyval(c, x) / slope
        if not lo <= y <= hi or abs(_polyval(c, y)) >= fx:
            break
        x, fx = y, abs(_polyval(c, y))
    return x


def real_roots(coeffs, lo: float, hi: float, tol: float = 1e-12) -> list[float]:
    """Sorted real roots in ``[lo, hi]`` of the polynomial with ``coeffs``.

    Coefficients are highest degree first, as in :func:`numpy.polyval`.
    Every returned root satisfies ``|p(x)| <= tol * max|coeff|``.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "f")
    if c.size <= 1:
        return []
    scale = float(np.max(np.abs(c)))
    ok = tol * scale
    dc = np.polyder(c)
    crit = [x for x in real_roots(dc, lo, hi, tol) if lo < x < hi] if c.size > 2 else []
    knots = [lo, *crit, hi]
    found: list[float] = []
    for x in knots:
        if abs(_polyval(c, x)) <= ok:
            found.append(x)
    for x0, x1 in zip(knots[:-1], knots[1:]):
        f0, f1 = _polyval(c, x0), _polyval(c, x1)
        if abs(f0) <= ok or abs(f1) <= ok or (f0 < 0) == (f1 < 0):
            continue
        r = _polish(c, dc, _bisect(c, x0, x1), x0, x1)
        if abs(_polyval(c, r)) <= ok:
            found.append(r)
    found.sort()
    out: list[float] = []
    for r in found:
        if not out or r - out[-1] > 1e-9 * (1.0 + abs(r)):
            out.append(r)
    return out
