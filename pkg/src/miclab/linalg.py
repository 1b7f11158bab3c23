"""Dense linear algebra kernel.

Thin wrappers around numpy's LAPACK bindings that enforce the library's
tolerance conventions: eigenvalues always come back in ascending order,
Hermiticity is checked before any eigendecomposition, and rank/singularity
decisions are made relative to the largest singular value.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import ConvergenceFailure, NotHermitian, ShapeMismatch, SingularOperator


class Definiteness(Enum):
    POSITIVE_SEMIDEFINITE = "positive-semidefinite"
    NEGATIVE_SEMIDEFINITE = "negative-semidefinite"
    INDEFINITE = "indefinite"


def _as_square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {a.shape}")
    return a.astype(complex, copy=False)


def hermiticity_defect(a) -> float:
    """Largest absolute entry of A - A^dagger."""
    a = _as_square(a)
    return float(np.abs(a - a.conj().T).max(initial=0.0))


def eigh(h, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with real eigenvalues in ascending
    order and eigenvectors as columns.  Raises NotHermitian if the input
    deviates from its own adjoint by more than hermitian_tol, and
    ConvergenceFailure if LAPACK does not converge.
    """
    h = _as_square(h)
    defect = hermiticity_defect(h)
    if defect > tol.hermitian_tol:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds {tol.hermitian_tol:.1e}")
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return w, v


def eigvalsh(h, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    return eigh(h, tol)[0]


def inv_sqrt_psd(h, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Inverse square root of a positive definite Hermitian matrix.

    The result R is Hermitian and satisfies R @ H @ R = I.  Raises
    SingularOperator if the smallest eigenvalue does not clear
    rank_tol times the largest.
    """
    w, v = eigh(h, tol)
    scale = w[-1]
    if scale <= 0 or w[0] <= tol.rank_tol * scale:
        raise SingularOperator(
            f"eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}] is not safely positive"
        )
    return (v / np.sqrt(w)) @ v.conj().T


def hadamard(a, b) -> np.ndarray:
    """Entrywise product of two equal-shape matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a * b


def kron(a, b) -> np.ndarray:
    """Kronecker product."""
    return np.kron(np.asarray(a), np.asarray(b))


def numerical_rank(a, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of singular values above rank_tol times the largest."""
    a = np.asarray(a)
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {a.shape}")
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_tol * s[0]))


def frobenius_distance(a, b) -> float:
    """Frobenius norm of A - B."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return float(np.linalg.norm(a - b))


def definiteness(h, tol: ToleranceConfig = DEFAULT_TOL) -> Definiteness:
    """Classify a Hermitian matrix by the signs of its eigenvalues.

    Eigenvalues within zero_tol of zero count as zero, so the zero matrix
    classifies as positive semidefinite.
    """
    w = eigvalsh(h, tol)
    has_negative = bool(w[0] < -tol.zero_tol)
    has_positive = bool(w[-1] > tol.zero_tol)
    if has_negative and has_positive:
        return Definiteness.INDEFINITE
    if has_negative:
        return Definiteness.NEGATIVE_SEMIDEFINITE
    return Definiteness.POSITIVE_SEMIDEFINITE
