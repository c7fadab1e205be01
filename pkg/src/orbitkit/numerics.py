"""Dense complex linear algebra for small matrices.

Everything downstream runs at desk scale (n <= 16), so the kernel favours
simple, robust algorithms: a cyclic Jacobi eigensolver for Hermitian
matrices, a scaling-and-squaring matrix exponential, and a tolerant rank
based on fully pivoted Gaussian elimination.  All norm comparisons use the
Frobenius norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "NotHermitian",
    "NoConvergence",
    "frobenius",
    "hermitian_eig",
    "matrix_exp",
    "rank_with_tol",
]

#: Hard cap on Jacobi sweeps; quadratic convergence needs far fewer.
MAX_JACOBI_SWEEPS = 100

#: Taylor degree and scaling target for the matrix exponential.
EXP_TAYLOR_DEGREE = 12
EXP_SCALE_LIMIT = 0.5


class NotHermitian(ValueError):
    """Matrix is not Hermitian within the requested tolerance."""


class NoConvergence(RuntimeError):
    """Jacobi iteration hit the sweep cap before the off-diagonal target."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair used throughout the package."""

    abs: float = 1e-12
    rel: float = 1e-9

    def __post_init__(self):
        if not (math.isfinite(self.abs) and math.isfinite(self.rel)):
            raise ValueError("tolerances must be finite")
        if self.abs < 0.0 or self.rel < 0.0:
            raise ValueError("tolerances must be nonnegative")

    def bound(self, scale: float) -> float:
        """Threshold abs + rel*scale for a quantity of the given magnitude."""
        return self.abs + self.rel * scale


DEFAULT_TOL = Tolerance()


def frobenius(a) -> float:
    """Frobenius norm of a matrix (2-norm of a vector)."""
    return float(np.linalg.norm(np.asarray(a)))


def _as_square(a, name: str = "matrix") -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def _off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part."""
    off = a - np.diag(np.diag(a))
    return frobenius(off)


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] (and a[q, p]) with a unitary plane rotation, in place.

    The 2x2 block [[a_pp, b], [conj(b), a_qq]] is diagonalised by first
    absorbing the phase of b and then applying a real Jacobi rotation.
    """
    b = a[p, q]
    phase = b / abs(b)
    theta = 0.5 * math.atan2(2.0 * abs(b), a[p, p].real - a[q, q].real)
    c = math.cos(theta)
    s = math.sin(theta)
    # U differs from the identity only in rows/cols p, q:
    #   U[p,p] = c        U[p,q] = -s
    #   U[q,p] = s/phase  U[q,q] = c/phase
    u_qp = s * np.conj(phase)
    u_qq = c * np.conj(phase)

    for mat in (a, v):
        col_p = mat[:, p].copy()
        col_q = mat[:, q].copy()
        mat[:, p] = col_p * c + col_q * u_qp
        mat[:, q] = col_q * u_qq - col_p * s

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = row_p * c + row_q * np.conj(u_qp)
    a[q, :] = row_q * np.conj(u_qq) - row_p * s

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def hermitian_eig(h, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and ``v`` unitary so
    that ``h = v @ diag(w) @ v.conj().T``.

    Raises:
        NotHermitian: if ``h`` deviates from its adjoint beyond ``tol``.
        NoConvergence: if the sweep cap is exhausted.
    """
    m = _as_square(h, "h")
    scale = frobenius(m)
    if frobenius(m - m.conj().T) > tol.bound(scale):
        raise NotHermitian(f"matrix deviates from Hermitian by more than {tol.bound(scale):.3e}")

    a = 0.5 * (m + m.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    # The absolute target tol.abs is unreachable once rounding dominates,
    # so it is floored at a few ulps of the input scale.
    target = max(tol.abs, 16.0 * np.finfo(float).eps * scale)
    skip = target / max(n * n, 1)

    converged = n <= 1 or _off_norm(a) <= target
    for _ in range(MAX_JACOBI_SWEEPS):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _jacobi_rotate(a, v, p, q)
        converged = _off_norm(a) <= target
    if not converged:
        raise NoConvergence(f"off-diagonal norm above {target:.3e} after {MAX_JACOBI_SWEEPS} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def matrix_exp(a) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor core.

    The input is scaled by 2**k until its Frobenius norm is at most 0.5,
    the exponential of the scaled matrix is summed to degree 12, and the
    result is squared k times.  Accurate to ~1e-12 for desk-scale inputs;
    skew-Hermitian arguments map to unitary matrices at that accuracy.
    """
    m = _as_square(a, "a")
    norm = frobenius(m)
    k = 0 if norm <= EXP_SCALE_LIMIT else int(math.ceil(math.log2(norm / EXP_SCALE_LIMIT)))
    b = m / (2.0**k)

    n = m.shape[0]
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for j in range(1, EXP_TAYLOR_DEGREE + 1):
        term = term @ b / j
        result = result + term
    for _ in range(k):
        result = result @ result
    return result


def rank_with_tol(a, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank via Gaussian elimination with full pivoting.

    A pivot counts while its magnitude exceeds ``tol.abs + tol.rel * m``
    where ``m`` is the largest entry magnitude of the input.
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {m.shape}")
    if m.size == 0:
        return 0

    work = m.copy()
    thresh = tol.bound(float(np.max(np.abs(work))))
    rows, cols = work.shape
    rank = 0
    for k in range(min(rows, cols)):
        sub = np.abs(work[k:, k:])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        if sub[i, j] <= thresh:
            break
        pi, pj = i + k, j + k
        work[[k, pi], :] = work[[pi, k], :]
        work[:, [k, pj]] = work[:, [pj, k]]
        factors = work[k + 1 :, k] / work[k, k]
        work[k + 1 :, k:] -= np.outer(factors, work[k, k:])
        rank += 1
    return rank
