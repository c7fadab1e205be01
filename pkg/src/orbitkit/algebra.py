"""Matrix Lie algebras: bases, brackets, structure constants and actions.

A :class:`LieAlgebra` is given by a list of matrices spanning a real Lie
algebra of complex n x n matrices.  Structure constants are computed once
from commutators at construction and cached; elements and covectors live
in coefficient coordinates with respect to the chosen basis.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT_TOL, Tolerance, frobenius, matrix_exp, rank_with_tol

__all__ = [
    "UnknownPreset",
    "BadDimension",
    "AlgebraMismatch",
    "NotInAlgebra",
    "LieAlgebra",
    "AlgebraElement",
    "GroupElement",
    "ValidationReport",
    "preset",
    "bracket",
    "ad_matrix",
    "Ad",
    "adjoint_action_matrix",
    "flow_point",
    "identity_element",
    "validate",
    "element_from_matrix",
    "elements_close",
    "random_element",
    "random_group_element",
    "algebra_from_dict",
    "load_algebra",
]

#: Relative residual allowed when re-expanding a matrix in the basis.
EXPANSION_RTOL = 1e-9

#: Residual bound for the structural axioms checked by :func:`validate`.
AXIOM_TOL = 1e-10

_PRESET_RE = re.compile(r"^(su|u|so)\((\d+)\)$")


class UnknownPreset(ValueError):
    """Preset family name is not one of su, u, so."""


class BadDimension(ValueError):
    """Preset size n is out of range for the requested family."""


class AlgebraMismatch(ValueError):
    """Operands belong to different Lie algebras."""


class NotInAlgebra(ValueError):
    """A matrix could not be expanded in the basis within tolerance."""


class LieAlgebra:
    """Real Lie algebra spanned by complex matrices.

    Args:
        name: label such as ``"su(2)"``; preset-style names unlock the
            orbit classification helpers.
        basis: sequence of d complex matrices of a common square size.
        tol: tolerance used for membership and rank decisions.
    """

    def __init__(self, name: str, basis, tol: Tolerance = DEFAULT_TOL):
        mats = np.asarray(basis, dtype=complex)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise ValueError(f"basis must be d square matrices, got shape {mats.shape}")
        if mats.shape[0] == 0:
            raise ValueError("basis is empty")
        if not np.all(np.isfinite(mats)):
            raise ValueError("basis has non-finite entries")

        self.name = str(name)
        self.basis = mats
        self.dim = int(mats.shape[0])
        self.n = int(mats.shape[1])
        self.tol = tol

        flat = mats.reshape(self.dim, -1)
        design = np.concatenate([flat.real, flat.imag], axis=1).T  # (2n^2, d)
        if rank_with_tol(design, tol) < self.dim:
            raise ValueError("basis matrices are linearly dependent")
        self._design = design
        self._pinv = np.linalg.pinv(design)

        c = np.zeros((self.dim, self.dim, self.dim))
        closure = 0.0
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                comm = mats[i] @ mats[j] - mats[j] @ mats[i]
                coeffs, residual = self.expand(comm)
                c[i, j] = coeffs
                c[j, i] = -coeffs
                closure = max(closure, residual)
        self.structure_constants = c
        self.closure_residual = closure

        self.basis.setflags(write=False)
        self.structure_constants.setflags(write=False)

    @property
    def family(self) -> str | None:
        """Preset family ("su", "u", "so") parsed from the name, else None."""
        m = _PRESET_RE.match(self.name)
        return m.group(1) if m else None

    def expand(self, matrix) -> tuple[np.ndarray, float]:
        """Least-squares coordinates of a matrix in the basis.

        Returns ``(coeffs, residual)`` where ``residual`` is the Frobenius
        distance between the input and its reconstruction.
        """
        m = np.asarray(matrix, dtype=complex)
        vec = np.concatenate([m.reshape(-1).real, m.reshape(-1).imag])
        coeffs = self._pinv @ vec
        recon = np.tensordot(coeffs, self.basis, axes=1)
        return coeffs, frobenius(m - recon)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim}, n={self.n})"


@dataclass(eq=False)
class AlgebraElement:
    """Element of a Lie algebra, stored as real basis coefficients."""

    algebra: LieAlgebra
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if c.shape[0] != self.algebra.dim:
            raise ValueError(f"expected {self.algebra.dim} coefficients, got {c.shape[0]}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        self.coeffs = c

    @property
    def matrix(self) -> np.ndarray:
        return np.tensordot(self.coeffs, self.algebra.basis, axes=1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs - other.coeffs)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, -self.coeffs)

    def __mul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra.name}, {np.array2string(self.coeffs, precision=4)})"


@dataclass(eq=False)
class GroupElement:
    """Invertible matrix acting on the algebra by conjugation."""

    algebra: LieAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.algebra.n, self.algebra.n):
            raise ValueError(f"expected a {self.algebra.n} x {self.algebra.n} matrix")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix must be finite")
        self.matrix = m

    def inverse(self) -> "GroupElement":
        return GroupElement(self.algebra, np.linalg.inv(self.matrix))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        _same_algebra(self, other)
        return GroupElement(self.algebra, self.matrix @ other.matrix)

    def __repr__(self) -> str:
        return f"GroupElement({self.algebra.name}, n={self.algebra.n})"


def _same_algebra(*objs) -> LieAlgebra:
    alg = objs[0].algebra
    for o in objs[1:]:
        if o.algebra is not alg:
            raise AlgebraMismatch(f"operands from {alg.name} and {o.algebra.name}")
    return alg


def _basis_u(n: int) -> list[np.ndarray]:
    out = []
    for k in range(n):
        m = np.zeros((n, n), dtype=complex)
        m[k, k] = 1j
        out.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = -1.0
            out.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = 1j
            m[k, j] = 1j
            out.append(m)
    return out


def _basis_su(n: int) -> list[np.ndarray]:
    if n == 2:
        # Pauli basis e_k = -(i/2) sigma_k, so [e_i, e_j] = eps_ijk e_k.
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        sz = np.array([[1, 0], [0, -1]], dtype=complex)
        return [-0.5j * sx, -0.5j * sy, -0.5j * sz]
    out = []
    for k in range(n - 1):
        m = np.zeros((n, n), dtype=complex)
        m[k, k] = 1j
        m[k + 1, k + 1] = -1j
        out.append(m)
    return out + _basis_u(n)[n:]


def _basis_so(n: int) -> list[np.ndarray]:
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = -1.0
            out.append(m)
    return out


def preset(name: str, n: int) -> LieAlgebra:
    """Canonical basis for one of the compact families su(n), u(n), so(n)."""
    if name not in ("su", "u", "so"):
        raise UnknownPreset(f"unknown preset {name!r}; expected su, u or so")
    n = int(n)
    if n < 1:
        raise BadDimension("n must be at least 1")
    if name == "so" and n < 2:
        raise BadDimension("so(n) needs n >= 2")
    if name == "su" and n < 2:
        raise BadDimension("su(n) needs n >= 2")
    basis = {"u": _basis_u, "su": _basis_su, "so": _basis_so}[name](n)
    return LieAlgebra(f"{name}({n})", basis)


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket [x, y] evaluated through the structure constants."""
    alg = _same_algebra(x, y)
    coeffs = np.einsum("i,j,ijk->k", x.coeffs, y.coeffs, alg.structure_constants)
    return AlgebraElement(alg, coeffs)


def ad_matrix(x: AlgebraElement) -> np.ndarray:
    """Matrix of ad(x) = [x, .] on the algebra; column j holds [x, e_j]."""
    return np.einsum("i,ijk->kj", x.coeffs, x.algebra.structure_constants)


def Ad(g: GroupElement, x: AlgebraElement) -> AlgebraElement:
    """Adjoint action g x g^{-1}, re-expanded in the basis.

    Raises NotInAlgebra when the conjugated matrix leaves the algebra,
    which signals that g does not preserve it.
    """
    alg = _same_algebra(g, x)
    conj = g.matrix @ x.matrix @ np.linalg.inv(g.matrix)
    coeffs, residual = alg.expand(conj)
    if residual > EXPANSION_RTOL * max(1.0, frobenius(conj)):
        raise NotInAlgebra(f"conjugation left the algebra (residual {residual:.3e})")
    return AlgebraElement(alg, coeffs)


def adjoint_action_matrix(g: GroupElement) -> np.ndarray:
    """Matrix of X -> g X g^{-1} in basis coordinates (d x d, real)."""
    alg = g.algebra
    ginv = np.linalg.inv(g.matrix)
    cols = np.empty((alg.dim, alg.dim))
    for j in range(alg.dim):
        conj = g.matrix @ alg.basis[j] @ ginv
        coeffs, residual = alg.expand(conj)
        if residual > EXPANSION_RTOL * max(1.0, frobenius(conj)):
            raise NotInAlgebra(f"conjugation left the algebra (residual {residual:.3e})")
        cols[:, j] = coeffs
    return cols


def flow_point(x: AlgebraElement, t: float) -> GroupElement:
    """Point exp(t x) on the one-parameter subgroup generated by x."""
    return GroupElement(x.algebra, matrix_exp(float(t) * x.matrix))


def identity_element(algebra: LieAlgebra) -> GroupElement:
    return GroupElement(algebra, np.eye(algebra.n, dtype=complex))


@dataclass
class ValidationReport:
    """Residuals of the algebra axioms; passes when all are tiny."""

    algebra: str
    antisymmetry: float
    jacobi: float
    closure: float
    tolerance: float = AXIOM_TOL

    @property
    def passed(self) -> bool:
        return max(self.antisymmetry, self.jacobi, self.closure) <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "antisymmetry": self.antisymmetry,
            "jacobi": self.jacobi,
            "closure": self.closure,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def validate(algebra: LieAlgebra) -> ValidationReport:
    """Check antisymmetry, the Jacobi identity and closure of the basis."""
    c = algebra.structure_constants
    antisym = float(np.max(np.abs(c + np.einsum("ijk->jik", c)))) if c.size else 0.0

    t1 = np.einsum("ijm,mkl->ijkl", c, c)
    jac = t1 + np.einsum("jkil->ijkl", t1) + np.einsum("kijl->ijkl", t1)
    jacobi = float(np.max(np.abs(jac))) if jac.size else 0.0

    mats = algebra.basis
    comms = np.einsum("iab,jbc->ijac", mats, mats)
    comms = comms - np.einsum("ijac->jiac", comms)
    recon = np.einsum("ijk,kab->ijab", c, mats)
    closure = float(np.max(np.sqrt(np.sum(np.abs(comms - recon) ** 2, axis=(2, 3)))))

    return ValidationReport(algebra.name, antisym, jacobi, closure)


def element_from_matrix(algebra: LieAlgebra, matrix, rtol: float = EXPANSION_RTOL) -> AlgebraElement:
    """Expand a matrix in the basis, requiring it to lie in the algebra."""
    coeffs, residual = algebra.expand(matrix)
    if residual > rtol * max(1.0, frobenius(matrix)):
        raise NotInAlgebra(f"matrix is not in {algebra.name} (residual {residual:.3e})")
    return AlgebraElement(algebra, coeffs)


def elements_close(x: AlgebraElement, y: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Coefficient-distance equality test."""
    _same_algebra(x, y)
    dist = float(np.linalg.norm(x.coeffs - y.coeffs))
    return dist <= tol.bound(max(x.norm(), y.norm()))


def random_element(algebra: LieAlgebra, rng: np.random.Generator) -> AlgebraElement:
    """Element with independent uniform coefficients in [-1, 1]."""
    return AlgebraElement(algebra, rng.uniform(-1.0, 1.0, algebra.dim))


def random_group_element(algebra: LieAlgebra, rng: np.random.Generator) -> GroupElement:
    """Group element exp(X) for a random X; stays in the group exactly."""
    return flow_point(random_element(algebra, rng), 1.0)


def algebra_from_dict(data: dict) -> LieAlgebra:
    """Build an algebra from the JSON wire format.

    Expected shape: ``{"name": str, "n": int, "basis": [matrix]}`` with each
    matrix an array of rows and each entry a ``[re, im]`` pair.  Structure
    constants are always recomputed from the basis, never read from input.
    """
    try:
        name = data["name"]
        n = int(data["n"])
        raw = data["basis"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad algebra document: {exc}") from exc
    mats = []
    for matrix in raw:
        entries = np.asarray(matrix, dtype=float)
        if entries.shape != (n, n, 2):
            raise ValueError(f"each basis matrix must be {n} x {n} with [re, im] entries")
        mats.append(entries[..., 0] + 1j * entries[..., 1])
    return LieAlgebra(name, mats)


def load_algebra(path) -> LieAlgebra:
    """Read an algebra from a JSON file in the wire format."""
    with open(path, "r", encoding="utf-8") as fh:
        return algebra_from_dict(json.load(fh))
