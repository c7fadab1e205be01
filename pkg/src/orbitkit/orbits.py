"""Spectral classification of adjoint orbits for the unitary families.

A skew-Hermitian matrix is unitarily diagonalizable with purely imaginary
eigenvalues i*lambda_j, so its conjugation orbit is labeled by the sorted
spectrum.  Clustering equal eigenvalues with multiplicities (n_1, ..., n_k)
identifies the orbit with the partial-flag manifold
U(n)/(U(n_1) x ... x U(n_k)) of dimension n^2 - sum(n_j^2).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .algebra import AlgebraElement, ad_matrix
from .numerics import Tolerance, frobenius, hermitian_eig, rank_with_tol

__all__ = [
    "NotSkewHermitian",
    "UnsupportedAlgebra",
    "OrbitDescriptor",
    "classify",
    "same_orbit",
    "tangent_basis",
    "isotropy_dim",
]


class NotSkewHermitian(ValueError):
    """Element's matrix is not skew-Hermitian within tolerance."""


class UnsupportedAlgebra(ValueError):
    """Orbit classification needs a u(n) or su(n) algebra."""


@dataclass(frozen=True)
class OrbitDescriptor:
    """Conjugation-invariant label of an adjoint (or coadjoint) orbit."""

    spectrum: tuple[float, ...]
    multiplicities: tuple[int, ...]
    orbit_dim: int
    isotropy_dim: int
    flag_type: str

    def as_dict(self) -> dict:
        return {
            "spectrum": [float(v) for v in self.spectrum],
            "multiplicities": list(self.multiplicities),
            "orbit_dim": self.orbit_dim,
            "isotropy_dim": self.isotropy_dim,
            "flag_type": self.flag_type,
        }

    def matches(self, other: "OrbitDescriptor", tol: float = 1e-8) -> bool:
        """Same orbit label: identical discrete data, spectra within tol."""
        if (
            self.multiplicities != other.multiplicities
            or self.orbit_dim != other.orbit_dim
            or self.isotropy_dim != other.isotropy_dim
            or self.flag_type != other.flag_type
            or len(self.spectrum) != len(other.spectrum)
        ):
            return False
        return bool(
            np.max(np.abs(np.asarray(self.spectrum) - np.asarray(other.spectrum))) <= tol
        )

    def copy(self) -> "OrbitDescriptor":
        return replace(self)


def _unitary_family(x: AlgebraElement) -> str:
    fam = x.algebra.family
    if fam not in ("u", "su"):
        raise UnsupportedAlgebra(
            f"orbit classification needs u(n) or su(n); got {x.algebra.name!r}"
        )
    return fam


def _skew_spectrum(x: AlgebraElement, tol: Tolerance) -> np.ndarray:
    m = x.matrix
    if frobenius(m + m.conj().T) > tol.bound(frobenius(m)):
        raise NotSkewHermitian("matrix deviates from skew-Hermitian beyond tolerance")
    w, _ = hermitian_eig(-1j * m, tol)
    return w


def _cluster(spectrum: np.ndarray, cluster_tol: float) -> list[int]:
    """Multiplicities of maximal runs with consecutive gaps <= cluster_tol."""
    mults = [1]
    for gap in np.diff(spectrum):
        if gap <= cluster_tol:
            mults[-1] += 1
        else:
            mults.append(1)
    return mults


def default_cluster_tol(x: AlgebraElement) -> float:
    return 1e-8 * max(1.0, frobenius(x.matrix))


def classify(x: AlgebraElement, cluster_tol: float | None = None) -> OrbitDescriptor:
    """Orbit descriptor of a skew-Hermitian element of u(n) or su(n).

    The spectrum of -iX is clustered at ``cluster_tol`` (default
    ``1e-8 * max(1, |X|)``); with multiplicities (n_1, ..., n_k) the orbit
    has dimension n^2 - sum(n_j^2) and flag type U(n)/(U(n_1)x...xU(n_k)).
    """
    fam = _unitary_family(x)
    tol = x.algebra.tol
    spectrum = _skew_spectrum(x, tol)
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(x)

    if spectrum.size and fam == "su":
        total = abs(float(np.sum(spectrum)))
        if total > 1e-8 * max(1.0, float(np.max(np.abs(spectrum)))):
            warnings.warn(f"su(n) element has non-traceless spectrum (sum {total:.3e})")

    mults = _cluster(spectrum, cluster_tol)
    n = x.algebra.n
    orbit_dim = n * n - sum(m * m for m in mults)
    flag = f"U({n})/(" + "×".join(f"U({m})" for m in mults) + ")"
    return OrbitDescriptor(
        spectrum=tuple(float(v) for v in spectrum),
        multiplicities=tuple(mults),
        orbit_dim=orbit_dim,
        isotropy_dim=x.algebra.dim - orbit_dim,
        flag_type=flag,
    )


def same_orbit(x: AlgebraElement, y: AlgebraElement, cluster_tol: float | None = None) -> bool:
    """Whether two elements lie on the same adjoint orbit (equal spectra)."""
    _unitary_family(x)
    _unitary_family(y)
    if x.algebra is not y.algebra:
        return False
    tol = x.algebra.tol
    sx = _skew_spectrum(x, tol)
    sy = _skew_spectrum(y, tol)
    if cluster_tol is None:
        cluster_tol = max(default_cluster_tol(x), default_cluster_tol(y))
    return bool(np.max(np.abs(sx - sy), initial=0.0) <= cluster_tol)


def tangent_basis(h: AlgebraElement) -> list[AlgebraElement]:
    """Maximal independent set among the brackets [e_i, h].

    These span the tangent space of the orbit through h; the size equals
    rank(ad h), the orbit dimension.
    """
    alg = h.algebra
    tol = alg.tol
    ad_h = ad_matrix(h)
    selected: list[np.ndarray] = []
    rank = 0
    for i in range(alg.dim):
        cand = -ad_h[:, i]  # coefficients of [e_i, h]
        trial = np.vstack(selected + [cand]) if selected else cand.reshape(1, -1)
        new_rank = rank_with_tol(trial, tol)
        if new_rank > rank:
            selected.append(cand)
            rank = new_rank
    return [AlgebraElement(alg, v) for v in selected]


def isotropy_dim(h: AlgebraElement) -> int:
    """Dimension of the centralizer ker ad(h) inside h's own algebra."""
    alg = h.algebra
    return alg.dim - rank_with_tol(ad_matrix(h), alg.tol)
