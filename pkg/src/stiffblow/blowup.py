"""Spectra of blown-up frameworks, predicted from the base framework alone.

The predicted side never builds the blow-up: it only needs the d x d local
weighted stiffness matrices and the weighted stiffness matrix of the base
framework. The direct side builds the blow-up and diagonalises it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stiffblow.errors import InvalidArgument
from stiffblow.framework import (
    Framework,
    _local_rigidity,
    lower_stiffness,
    stiffness,
)
from stiffblow.graphs import Graph, as_weights, blow_up, blow_up_embedding
from stiffblow.spectra import (
    DEFAULT_TOL,
    Spectrum,
    eigenvalues_sym,
    gap_index,
    kth_smallest,
    max_pairwise_gap,
    multiset_union,
)


def blown_up_framework(G: Graph, p, a) -> Framework:
    H, idx = blow_up(G, a)
    return Framework(H, blow_up_embedding(p, a, idx))


def blowup_spectrum_rhs(G: Graph, p, a) -> Spectrum:
    """Stiffness spectrum of the a-blow-up, assembled from the base framework.

    Each vertex contributes the spectrum of its weighted local stiffness
    matrix ``a[v] - 1`` times; the weighted stiffness matrix contributes once.
    """
    fw = Framework(G, p)
    a = as_weights(a, G.n, integer=True)
    parts = []
    for v in range(G.n):
        k = int(a[v]) - 1
        if k == 0:
            continue
        Rv = _local_rigidity(fw, v, a)
        parts.append(eigenvalues_sym(Rv @ Rv.T).repeat(k))
    parts.append(eigenvalues_sym(stiffness(fw, a)))
    return multiset_union(*parts)


def lower_blowup_spectrum_rhs(G: Graph, p, a) -> Spectrum:
    """Lower stiffness spectrum of the a-blow-up from the base framework.

    Besides the local and global weighted lower stiffness spectra, the
    blow-up carries ``sum over edges of (a[u]-1)(a[v]-1)`` extra zeros.
    """
    fw = Framework(G, p)
    a = as_weights(a, G.n, integer=True)
    parts = []
    for v in range(G.n):
        k = int(a[v]) - 1
        if k == 0 or G.degree(v) == 0:
            continue
        Rv = _local_rigidity(fw, v, a)
        parts.append(eigenvalues_sym(Rv.T @ Rv).repeat(k))
    parts.append(eigenvalues_sym(lower_stiffness(fw, a)))
    parts.append(Spectrum(np.zeros(extra_zero_count(G, a))))
    return multiset_union(*parts)


def extra_zero_count(G: Graph, a) -> int:
    a = as_weights(a, G.n, integer=True).astype(int)
    return int(sum((a[u] - 1) * (a[v] - 1) for u, v in G.edges))


@dataclass(frozen=True)
class BlowupReport:
    lhs: Spectrum
    rhs: Spectrum
    equal: bool
    max_pairwise_gap: float

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "equal": self.equal,
            "max_pairwise_gap": self.max_pairwise_gap,
        }


def _report(lhs: Spectrum, rhs: Spectrum, tol: float) -> BlowupReport:
    gap = max_pairwise_gap(lhs, rhs)
    return BlowupReport(Spectrum(lhs.values, tol), Spectrum(rhs.values, tol), gap <= tol, gap)


def verify_blowup_theorem(G: Graph, p, a, tol: float = DEFAULT_TOL) -> BlowupReport:
    """Compare the directly computed blow-up stiffness spectrum with the prediction."""
    lhs = eigenvalues_sym(stiffness(blown_up_framework(G, p, a)))
    return _report(lhs, blowup_spectrum_rhs(G, p, a), tol)


def verify_lower_blowup_theorem(G: Graph, p, a, tol: float = DEFAULT_TOL) -> BlowupReport:
    lhs = eigenvalues_sym(lower_stiffness(blown_up_framework(G, p, a)))
    return _report(lhs, lower_blowup_spectrum_rhs(G, p, a), tol)


def uniform_blowup_gap_scaling(G: Graph, p, kmax: int) -> list[tuple[int, float]]:
    """Directly computed spectral gaps of the uniform k-blow-ups, k = 2..kmax."""
    if kmax < 2:
        raise InvalidArgument("kmax must be at least 2")
    p = np.asarray(p, dtype=float)
    idx = gap_index(p.shape[1])
    out = []
    for k in range(2, kmax + 1):
        fw = blown_up_framework(G, p, [k] * G.n)
        out.append((k, kth_smallest(eigenvalues_sym(stiffness(fw)), idx)))
    return out
