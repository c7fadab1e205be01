"""Invariant bilinear forms and the induced algebra/dual isomorphisms.

The Killing form tr(ad X . ad Y) decides semisimplicity (nondegenerate iff
semisimple) and is negative definite for the compact semisimple presets.
For u(n), whose Killing form is degenerate on the centre, the negative
trace form -Re tr(XY) is the nondegenerate invariant substitute.  A
nondegenerate form turns coefficients into dual coefficients (flat) and
back (sharp); flat intertwines the adjoint and coadjoint actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .algebra import (
    Ad,
    AlgebraElement,
    AlgebraMismatch,
    GroupElement,
    LieAlgebra,
    adjoint_action_matrix,
)
from .numerics import DEFAULT_TOL, Tolerance, hermitian_eig

__all__ = [
    "DegenerateForm",
    "BilinearForm",
    "Covector",
    "SemisimpleVerdict",
    "killing_form",
    "trace_form",
    "is_semisimple",
    "classify_definiteness",
    "flat",
    "sharp",
    "pairing",
    "coadjoint",
    "ad_invariance_residual",
]

NEGATIVE_DEFINITE = "negative_definite"
POSITIVE_DEFINITE = "positive_definite"
INDEFINITE = "indefinite"
DEGENERATE = "degenerate"


class DegenerateForm(ValueError):
    """Operation requires a nondegenerate Gram matrix."""


@dataclass(eq=False)
class BilinearForm:
    """Symmetric bilinear form on a Lie algebra, stored as a Gram matrix."""

    algebra: LieAlgebra
    gram: np.ndarray
    kind: str
    _eig: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=float)
        d = self.algebra.dim
        if g.shape != (d, d):
            raise ValueError(f"gram must be {d} x {d}")
        if not np.all(np.isfinite(g)):
            raise ValueError("gram must be finite")
        self.gram = 0.5 * (g + g.T)
        self.gram.setflags(write=False)

    def __call__(self, x: AlgebraElement, y: AlgebraElement) -> float:
        if x.algebra is not self.algebra or y.algebra is not self.algebra:
            raise AlgebraMismatch("elements do not belong to the form's algebra")
        return float(x.coeffs @ self.gram @ y.coeffs)

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues/eigenvectors of the Gram matrix (cached)."""
        if self._eig is None:
            w, v = hermitian_eig(self.gram.astype(complex), self.algebra.tol)
            self._eig = (w, v.real)
        return self._eig

    def singular_range(self) -> tuple[float, float]:
        """(smallest, largest) singular value of the Gram matrix."""
        w, _ = self.eigensystem()
        s = np.abs(w)
        return float(np.min(s)), float(np.max(s))

    def is_nondegenerate(self, tol: Tolerance | None = None) -> bool:
        tol = tol or self.algebra.tol
        smin, smax = self.singular_range()
        return smin > tol.bound(smax)


class SemisimpleVerdict(NamedTuple):
    semisimple: bool
    witness: AlgebraElement | None


@dataclass(eq=False)
class Covector:
    """Element of the dual space in dual-basis coordinates."""

    algebra: LieAlgebra
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if c.shape[0] != self.algebra.dim:
            raise ValueError(f"expected {self.algebra.dim} coefficients, got {c.shape[0]}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        self.coeffs = c

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __add__(self, other: "Covector") -> "Covector":
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("covectors from different algebras")
        return Covector(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: "Covector") -> "Covector":
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("covectors from different algebras")
        return Covector(self.algebra, self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "Covector":
        return Covector(self.algebra, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Covector({self.algebra.name}, {np.array2string(self.coeffs, precision=4)})"


def pairing(alpha: Covector, x: AlgebraElement) -> float:
    """Natural pairing <alpha, x>, an exact coefficient dot product."""
    if alpha.algebra is not x.algebra:
        raise AlgebraMismatch("covector and element from different algebras")
    return float(alpha.coeffs @ x.coeffs)


def killing_form(algebra: LieAlgebra) -> BilinearForm:
    """Killing form B(X, Y) = tr(ad X . ad Y) from the structure constants."""
    c = algebra.structure_constants
    # ad(e_i)[k, l] = c[i, l, k]; trace of the product contracts both indices.
    gram = np.einsum("ilk,jkl->ij", c, c)
    return BilinearForm(algebra, gram, "killing")


def trace_form(algebra: LieAlgebra) -> BilinearForm:
    """Negative trace form -Re tr(e_i e_j); positive definite on u(n)/su(n).

    Conjugation-invariant for any matrix group, hence an Ad-invariant
    replacement where the Killing form degenerates (the centre of u(n)).
    """
    gram = -np.einsum("iab,jba->ij", algebra.basis, algebra.basis).real
    return BilinearForm(algebra, gram, "trace")


def is_semisimple(algebra: LieAlgebra, tol: Tolerance | None = None) -> SemisimpleVerdict:
    """Cartan's criterion: nondegenerate Killing form iff semisimple.

    On failure the verdict carries a witness, a unit null vector of the
    Killing Gram matrix (for u(n) it is proportional to iI).
    """
    tol = tol or algebra.tol
    form = killing_form(algebra)
    w, v = form.eigensystem()
    s = np.abs(w)
    smax = float(np.max(s))
    idx = int(np.argmin(s))
    if s[idx] > tol.bound(smax):
        return SemisimpleVerdict(True, None)
    return SemisimpleVerdict(False, AlgebraElement(algebra, v[:, idx]))


def classify_definiteness(form: BilinearForm, tol: Tolerance | None = None) -> str:
    """Signature class of the Gram matrix: definite, indefinite or degenerate."""
    tol = tol or form.algebra.tol
    w, _ = form.eigensystem()
    thresh = tol.bound(float(np.max(np.abs(w), initial=0.0)))
    if np.any(np.abs(w) <= thresh):
        return DEGENERATE
    if np.all(w > 0):
        return POSITIVE_DEFINITE
    if np.all(w < 0):
        return NEGATIVE_DEFINITE
    return INDEFINITE


def flat(form: BilinearForm, x: AlgebraElement) -> Covector:
    """Lower an index: the covector B(x, .) in dual-basis coordinates."""
    if x.algebra is not form.algebra:
        raise AlgebraMismatch("element does not belong to the form's algebra")
    return Covector(form.algebra, form.gram @ x.coeffs)


def sharp(form: BilinearForm, alpha: Covector, tol: Tolerance | None = None) -> AlgebraElement:
    """Raise an index: solve gram . x = alpha; inverse of :func:`flat`."""
    if alpha.algebra is not form.algebra:
        raise AlgebraMismatch("covector does not belong to the form's algebra")
    tol = tol or form.algebra.tol
    w, v = form.eigensystem()
    s = np.abs(w)
    if float(np.min(s)) <= tol.bound(float(np.max(s))):
        raise DegenerateForm(f"{form.kind} form on {form.algebra.name} is degenerate")
    x = v @ ((v.T @ alpha.coeffs) / w)
    return AlgebraElement(form.algebra, x)


def coadjoint(g: GroupElement, alpha: Covector) -> Covector:
    """Coadjoint action: <coadjoint(g, a), X> = <a, Ad(g^{-1}) X>."""
    if alpha.algebra is not g.algebra:
        raise AlgebraMismatch("covector and group element from different algebras")
    m = adjoint_action_matrix(g.inverse())
    return Covector(alpha.algebra, m.T @ alpha.coeffs)


def ad_invariance_residual(
    form: BilinearForm, g: GroupElement, x: AlgebraElement, y: AlgebraElement
) -> float:
    """Normalized defect |B(Ad g X, Ad g Y) - B(X, Y)| / (1 + |B(X, Y)|)."""
    base = form(x, y)
    moved = form(Ad(g, x), Ad(g, y))
    return abs(moved - base) / (1.0 + abs(base))
