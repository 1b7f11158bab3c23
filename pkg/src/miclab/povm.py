"""POVMs, MICs, Gram matrices and dual bases.

A POVM is a finite collection of positive semidefinite effects summing to the
identity on a d-dimensional Hilbert space.  A MIC (minimal informationally
complete POVM) has exactly d^2 effects that are linearly independent as
operators, so every density matrix is determined by its outcome probabilities.

The central object throughout is the Gram matrix G with entries
tr(E_i E_j).  It is real, symmetric, positive definite for a MIC, and its
entries sum to d.  The dual basis {E~_i}, defined by tr(E_i E~_j) = delta_ij,
is obtained by applying the inverse Gram matrix to the effects and is what
turns measured probabilities back into operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import CONDITION_LIMIT, DEFAULT_TOL, ToleranceConfig
from .errors import (
    IllConditionedGram,
    InvalidState,
    LinearlyDependent,
    NotHermitian,
    NotNormalized,
    NotPsd,
    ShapeMismatch,
    SumNotIdentity,
    WrongCount,
)
from .linalg import eigh, eigvalsh, hadamard, numerical_rank


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Effect:
    """One POVM element: a positive semidefinite matrix E with tr E <= d.

    weight caches tr E.  unit_part is E / tr E (a density matrix) when the
    weight is positive, and None for a (numerically) zero effect.
    """

    matrix: np.ndarray
    weight: float
    unit_part: np.ndarray | None

    @staticmethod
    def from_matrix(e: np.ndarray, zero_tol: float) -> "Effect":
        weight = float(np.trace(e).real)
        unit = _frozen(e / weight) if weight > zero_tol else None
        return Effect(_frozen(e), weight, unit)


@dataclass(frozen=True, eq=False)
class Povm:
    """A validated POVM: dimension plus its tuple of effects."""

    dim: int
    effects: tuple[Effect, ...]

    def __len__(self) -> int:
        return len(self.effects)

    def matrices(self) -> np.ndarray:
        """Effects stacked into an (N, d, d) array."""
        return np.array([e.matrix for e in self.effects])

    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.effects])


@dataclass(frozen=True, eq=False)
class Mic(Povm):
    """A validated MIC.  gram caches the d^2 x d^2 Gram matrix."""

    gram: np.ndarray = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class DualBasis:
    """Operator basis dual to a MIC's effects: tr(E_i E~_j) = delta_ij.

    Every element is Hermitian with unit trace, and by the structure of MICs
    none of them is ever positive or negative semidefinite.
    """

    dim: int
    elements: tuple[np.ndarray, ...]


def validate_povm(effects, tol: ToleranceConfig = DEFAULT_TOL) -> Povm:
    """Check positivity and completeness of a collection of matrices.

    Raises NotPsd (with the offending index) if any element has an eigenvalue
    below -zero_tol, and SumNotIdentity if the effects do not sum to the
    identity within zero_tol * d in Frobenius norm.
    """
    mats = [np.asarray(e, dtype=complex) for e in effects]
    if not mats:
        raise WrongCount(0, 1)
    d = mats[0].shape[0]
    checked = []
    for i, e in enumerate(mats):
        if e.shape != (d, d):
            raise ShapeMismatch(f"effect {i} has shape {e.shape}, expected {(d, d)}")
        w = eigvalsh(e, tol)
        if w[0] < -tol.zero_tol:
            raise NotPsd(i, float(w[0]))
        checked.append(Effect.from_matrix(e, tol.zero_tol))
    deficit = float(np.linalg.norm(sum(m for m in mats) - np.eye(d)))
    if deficit > tol.zero_tol * d:
        raise SumNotIdentity(deficit)
    return Povm(dim=d, effects=tuple(checked))


def gram(povm: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Gram matrix [G]_ij = tr(E_i E_j).

    The matrix is real for Hermitian effects; any imaginary residue beyond
    zero_tol indicates corrupted input and raises NotHermitian via the
    underlying check.  The entries of a POVM Gram matrix always sum to d.
    """
    mats = povm.matrices()
    g = np.einsum("iab,jba->ij", mats, mats)
    residue = float(np.abs(g.imag).max(initial=0.0))
    if residue > tol.zero_tol:
        raise NotHermitian(f"Gram matrix has imaginary residue {residue:.3e}")
    g = g.real
    return _frozen((g + g.T) / 2)


def validate_mic(povm: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Promote a POVM to a MIC after checking informational completeness.

    Requires exactly d^2 effects (WrongCount), each with weight above
    zero_tol, and a full-rank Gram matrix (LinearlyDependent otherwise).
    """
    d = povm.dim
    n = len(povm)
    if n != d * d:
        raise WrongCount(n, d * d)
    for i, e in enumerate(povm.effects):
        if e.weight <= tol.zero_tol:
            raise LinearlyDependent(n - 1, n, f"effect {i} has negligible weight")
    g = gram(povm, tol)
    rank = numerical_rank(g, tol)
    if rank != d * d:
        raise LinearlyDependent(rank, d * d)
    return Mic(dim=d, effects=povm.effects, gram=g)


def mic_from_matrices(effects, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """validate_povm followed by validate_mic."""
    return validate_mic(validate_povm(effects, tol), tol)


def is_unbiased(mic: Mic, tol: float = 1e-9) -> bool:
    """True iff every weight equals 1/d within tol."""
    return bool(np.abs(mic.weights() - 1.0 / mic.dim).max() <= tol)


def dual_basis(mic: Mic, tol: ToleranceConfig = DEFAULT_TOL) -> DualBasis:
    """Basis dual to the MIC's effects, E~_i = sum_j [G^-1]_ij E_j.

    Refuses Gram matrices with condition number above 1e12 and verifies the
    biorthogonality relation tr(E_i E~_j) = delta_ij to 1e-8 before returning.
    """
    g = mic.gram
    cond = float(np.linalg.cond(g))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise IllConditionedGram(cond)
    mats = mic.matrices()
    n, d = mats.shape[0], mic.dim
    coeffs = np.linalg.solve(g, np.eye(n))
    # the exact inverse is symmetric; averaging halves the solve error
    # that otherwise concentrates in the small-eigenvalue subspace
    coeffs = (coeffs + coeffs.T) / 2.0
    duals = np.einsum("ij,jab->iab", coeffs, mats)
    # exactly Hermitian in theory; large inverse-Gram coefficients can
    # leave rounding asymmetry big enough to trip downstream eigh gates
    duals = (duals + duals.conj().transpose(0, 2, 1)) / 2.0
    check = np.einsum("iab,jba->ij", mats, duals)
    defect = float(np.abs(check - np.eye(n)).max())
    if defect > 1e-8:
        raise IllConditionedGram(cond, f"biorthogonality defect {defect:.3e} exceeds 1e-8")
    return DualBasis(dim=d, elements=tuple(_frozen(m) for m in duals))


def _check_state(rho, d: int, tol: ToleranceConfig) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise InvalidState(f"state has shape {rho.shape}, expected {(d, d)}")
    defect = float(np.abs(rho - rho.conj().T).max())
    if defect > tol.hermitian_tol:
        raise InvalidState(f"state is not Hermitian (defect {defect:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > 1e-10:
        raise InvalidState(f"state has trace {tr!r}, expected 1")
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if w[0] < -tol.zero_tol:
        raise InvalidState(f"state has negative eigenvalue {w[0]:.3e}")
    return rho


def born_probabilities(rho, povm: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Outcome probabilities p_i = tr(rho E_i) of a state under a POVM."""
    rho = _check_state(rho, povm.dim, tol)
    p = np.einsum("ab,iba->i", rho, povm.matrices()).real
    return _frozen(p)


def reconstruct_state(p, mic: Mic, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Operator sum_i p_i E~_i expanded in the MIC's dual basis.

    For p produced by born_probabilities this inverts the measurement map.
    The result is always Hermitian with trace equal to sum(p); it need not be
    positive semidefinite for an arbitrary probability vector.
    """
    p = np.asarray(p, dtype=float)
    n = mic.dim * mic.dim
    if p.shape != (n,):
        raise ShapeMismatch(f"expected {n} probabilities, got shape {p.shape}")
    duals = dual_basis(mic, tol)
    out = np.einsum("i,iab->ab", p, np.array(duals.elements))
    return _frozen((out + out.conj().T) / 2)


def purity_form(p, g, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Quadratic form sum_ij p_i p_j [G^-1]_ij.

    When p comes from measuring rho with the MIC whose Gram matrix is g this
    equals tr(rho^2), so it is 1 exactly for pure states and smaller for
    mixed ones.
    """
    p = np.asarray(p, dtype=float)
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or p.shape != (g.shape[0],):
        raise ShapeMismatch(f"probability shape {p.shape} vs Gram shape {g.shape}")
    cond = float(np.linalg.cond(g))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise IllConditionedGram(cond)
    return float(p @ np.linalg.solve(g, p))


def collision_probability(p) -> float:
    """sum_i p_i^2 for a probability vector (bounded below by 1/d^2 on MICs)."""
    p = np.asarray(p, dtype=float)
    if p.min(initial=0.0) < -DEFAULT_TOL.zero_tol:
        raise ValueError(f"negative probability {p.min():.3e}")
    if abs(p.sum() - 1.0) > 1e-10:
        raise ValueError(f"probabilities sum to {p.sum()!r}, expected 1")
    return float(p @ p)


def rescaled_vector_gram(vectors, weights, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Gram matrix of the rescaled vectors sqrt(e_i) |phi_i>.

    vectors must be unit vectors (NotNormalized otherwise) and weights must
    lie in [0, 1].  The result g_ij = sqrt(e_i e_j) <phi_i|phi_j> is complex
    Hermitian and positive semidefinite; its entrywise product with its own
    conjugate reproduces the POVM Gram matrix when the effects are
    E_i = e_i |phi_i><phi_i|.
    """
    vs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    ws = np.asarray(weights, dtype=float)
    if len(vs) != ws.shape[0]:
        raise ShapeMismatch(f"{len(vs)} vectors but {ws.shape[0]} weights")
    if ws.min(initial=0.0) < 0 or ws.max(initial=0.0) > 1 + tol.zero_tol:
        raise ValueError("weights must lie in [0, 1]")
    for i, v in enumerate(vs):
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-10:
            raise NotNormalized(i, norm)
    v = np.array(vs)
    scaled = v * np.sqrt(ws)[:, None]
    g = scaled.conj() @ scaled.T
    return _frozen((g + g.conj().T) / 2)


def rank1_mic_check(vectors, weights, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[bool, bool]:
    """Test whether rank-1 effects e_i |phi_i><phi_i| form a POVM, then a MIC.

    The first flag holds iff the rescaled-vector Gram matrix g is a rank-d
    projector (g @ g = g entrywise within zero_tol), which is equivalent to
    the effects summing to the identity.  The second additionally requires
    d^2 vectors and full rank of the entrywise product of g with its
    conjugate, which is the POVM Gram matrix.
    """
    g = rescaled_vector_gram(vectors, weights, tol)
    d = len(np.asarray(vectors[0]).ravel())
    projector_defect = float(np.abs(g @ g - g).max())
    is_povm = projector_defect <= tol.zero_tol and numerical_rank(g, tol) == d
    if not is_povm:
        return False, False
    n = g.shape[0]
    is_mic = n == d * d and numerical_rank(hadamard(g, g.conj()).real, tol) == d * d
    return True, is_mic


def effect_ranks(povm: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> list[int]:
    """Numerical rank of each effect."""
    return [numerical_rank(e.matrix, tol) for e in povm.effects]


def effect_eigenvalue_ranges(povm: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> list[tuple[float, float]]:
    """(min, max) eigenvalue of each effect."""
    out = []
    for e in povm.effects:
        w = eigh(e.matrix, tol)[0]
        out.append((float(w[0]), float(w[-1])))
    return out
