"""Symmetric eigenvalues and tolerance-aware spectrum multisets."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from stiffblow.errors import InvalidArgument
from stiffblow.framework import Framework, stiffness

DEFAULT_TOL = 1e-8
ZERO_TOL = 1e-10
SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted multiset of real eigenvalues with an absolute comparison tolerance."""

    values: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidArgument("spectrum tolerance must be positive")
        v = np.sort(np.asarray(self.values, dtype=float).reshape(-1))
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __iter__(self):
        return iter(self.values.tolist())

    def union(self, other: "Spectrum") -> "Spectrum":
        return Spectrum(np.concatenate([self.values, other.values]), max(self.tol, other.tol))

    def repeat(self, k: int) -> "Spectrum":
        if k < 0:
            raise InvalidArgument("repeat count must be non-negative")
        return Spectrum(np.tile(self.values, k), self.tol)

    def scale(self, alpha: float) -> "Spectrum":
        return Spectrum(alpha * self.values, self.tol)

    def count_zero(self, tol: float | None = None) -> int:
        t = ZERO_TOL if tol is None else tol
        return int(np.sum(np.abs(self.values) <= t))

    def to_dict(self) -> dict:
        return {"values": self.values.tolist(), "tol": self.tol}

    @classmethod
    def from_dict(cls, data: dict) -> "Spectrum":
        try:
            return cls(np.asarray(data["values"], dtype=float), float(data.get("tol", DEFAULT_TOL)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed spectrum JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def empty_spectrum(tol: float = DEFAULT_TOL) -> Spectrum:
    return Spectrum(np.zeros(0), tol)


def multiset_union(*spectra: Spectrum) -> Spectrum:
    out = empty_spectrum()
    for s in spectra:
        out = out.union(s)
    return out


def repeat(S: Spectrum, k: int) -> Spectrum:
    return S.repeat(k)


def scale(S: Spectrum, alpha: float) -> Spectrum:
    return S.scale(alpha)


def multiset_equal(S1: Spectrum, S2: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    """Equal length and sorted values pairwise within ``tol``."""
    return max_pairwise_gap(S1, S2) <= tol


def max_pairwise_gap(S1: Spectrum, S2: Spectrum) -> float:
    """Largest sorted pairwise difference; ``inf`` when the lengths differ."""
    if len(S1) != len(S2):
        return float("inf")
    if len(S1) == 0:
        return 0.0
    return float(np.max(np.abs(S1.values - S2.values)))


def _check_symmetric(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidArgument(f"matrix must be square, got shape {M.shape}")
    scale_ = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if M.size and np.max(np.abs(M - M.T)) > SYMMETRY_RTOL * scale_:
        raise InvalidArgument("matrix is not symmetric")
    return M


def eigenvalues_sym(M, tol: float = DEFAULT_TOL) -> Spectrum:
    """Ascending eigenvalues of a symmetric matrix (LAPACK ``syevd``)."""
    M = _check_symmetric(M)
    if M.size == 0:
        return empty_spectrum(tol)
    return Spectrum(np.linalg.eigvalsh(M), tol)


def kth_smallest(S: Spectrum, k: int) -> float:
    """The k-th smallest element, 1-based."""
    if not 1 <= k <= len(S):
        raise InvalidArgument(f"k = {k} out of range 1..{len(S)}")
    return float(S.values[k - 1])


def spectral_norm(M) -> float:
    M = np.asarray(M, dtype=float)
    return float(np.linalg.norm(M, 2)) if M.size else 0.0


def rank_tol(M, tol: float = ZERO_TOL) -> int:
    """Number of eigenvalues above ``tol * max(1, ||M||)`` for a PSD matrix."""
    S = eigenvalues_sym(M)
    if len(S) == 0:
        return 0
    thresh = tol * max(1.0, float(np.max(np.abs(S.values))))
    return int(np.sum(S.values > thresh))


def gap_index(d: int) -> int:
    """1-based index of the spectral gap among stiffness eigenvalues."""
    return comb(d + 1, 2) + 1


def spectral_gap(fw: Framework, f=None) -> float:
    """lambda_{C(d+1,2)+1} of the stiffness matrix of ``fw``."""
    return kth_smallest(eigenvalues_sym(stiffness(fw, f)), gap_index(fw.d))
