"""Constructions of specific MIC families.

Covers the symmetric (SIC) measurements in low dimensions, group-covariant
MICs built from Weyl-Heisenberg orbits, the orthocross family derived from
computational-basis and superposition projectors, generic MICs obtained by
squashing any positive semidefinite operator basis with the inverse square
root of its sum, equiangular interpolations, a rank-(d+1)/2 covariant family
for odd dimensions, tensor products, and a hand-built rank-1 unbiased MIC in
dimension three with exactly seven orthogonal pairs of effects.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

import numpy as np

from .config import DEFAULT_TOL, MAX_DIMENSION, ToleranceConfig
from .errors import (
    BetaOutOfRange,
    BetaZero,
    DegenerateFiducial,
    EnvelopeExceeded,
    EvenDimension,
    LinearlyDependent,
    NotNormalized,
    NotSic,
    WrongCount,
    WrongDimension,
)
from .linalg import eigh, inv_sqrt_psd, kron, numerical_rank
from .povm import Mic, Povm, _check_state, _frozen, mic_from_matrices, validate_povm


class FiducialProvenance(Enum):
    BUILT_IN = "built-in"
    USER_SUPPLIED = "user-supplied"
    NUMERICALLY_FOUND = "numerically-found"


@dataclass(frozen=True, eq=False)
class SicFiducial:
    """A unit vector whose Weyl-Heisenberg orbit forms a SIC."""

    dim: int
    vector: np.ndarray
    provenance: FiducialProvenance

    @staticmethod
    def from_vector(v, provenance=FiducialProvenance.USER_SUPPLIED) -> "SicFiducial":
        v = np.asarray(v, dtype=complex).ravel()
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-10:
            raise NotNormalized(0, norm)
        return SicFiducial(dim=v.shape[0], vector=_frozen(v), provenance=provenance)


def _check_dimension(d: int) -> None:
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if d > MAX_DIMENSION:
        raise EnvelopeExceeded(d, MAX_DIMENSION)


def sic_gram_matrix(d: int) -> np.ndarray:
    """Gram matrix of a SIC in dimension d: (d delta_ij + 1) / (d^2 (d+1))."""
    _check_dimension(d)
    n = d * d
    g = (d * np.eye(n) + np.ones((n, n))) / (d * d * (d + 1))
    return _frozen(g)


# ----------------------------------------------------------------- qubit SIC

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def sic_qubit(tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """The qubit SIC: four effects pointing at tetrahedron vertices.

    E_ss' = (1/2) P_ss' with P_ss' the projector along the Bloch vector
    (s, s', s s') / sqrt(3), enumerated in the order
    (+,+), (+,-), (-,+), (-,-).
    """
    effects = []
    for s in (1, -1):
        for sp in (1, -1):
            bloch = (s * _PAULI_X + sp * _PAULI_Y + s * sp * _PAULI_Z) / np.sqrt(3)
            effects.append((np.eye(2) + bloch) / 4)
    return mic_from_matrices(effects, tol)


# ------------------------------------------------------- Weyl-Heisenberg MICs

def wh_displacement(d: int, k: int, l: int) -> np.ndarray:
    """Displacement operator D_kl = (-e^{i pi/d})^{kl} X^k Z^l.

    X is the cyclic shift |j> -> |j+1 mod d> and Z the modulation
    |j> -> e^{2 pi i j / d} |j>.  Indices are reduced mod d; for odd d the
    operators are strictly periodic in both indices, for even d the
    reduction fixes a canonical sign.
    """
    _check_dimension(d)
    k = k % d
    l = l % d
    tau = -np.exp(1j * np.pi / d)
    j = np.arange(d)
    z_phases = np.exp(2j * np.pi * j * l / d)
    m = np.zeros((d, d), dtype=complex)
    m[(j + k) % d, j] = tau ** (k * l) * z_phases
    return _frozen(m)


@functools.lru_cache(maxsize=None)
def _displacement_basis(d: int) -> np.ndarray:
    """All d^2 displacement operators, row-major in (k, l)."""
    ops = np.array([wh_displacement(d, k, l) for k in range(d) for l in range(d)])
    return _frozen(ops)


def wh_mic(rho, overlap_tol: float = 1e-8, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Weyl-Heisenberg orbit MIC of a density matrix rho.

    The effects are E_kl = (1/d) D_kl rho D_kl^dagger, ordered row-major in
    (k, l).  The orbit spans operator space exactly when every displacement
    component tr(D_kl^dagger rho) is nonzero; components smaller in magnitude
    than overlap_tol raise DegenerateFiducial.  The result is always
    unbiased, and every row of its Gram matrix is a permutation of the first.
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    _check_dimension(d)
    rho = _check_state(rho, d, tol)
    ops = _displacement_basis(d)
    components = np.einsum("kba,ba->k", ops.conj(), rho)
    small = np.abs(components) <= overlap_tol
    if small.any():
        idx = int(np.argmax(small))
        raise DegenerateFiducial(idx // d, idx % d, float(np.abs(components[idx])))
    effects = np.einsum("kab,bc,kdc->kad", ops, rho, ops.conj()) / d
    return mic_from_matrices(list(effects), tol)


@functools.lru_cache(maxsize=None)
def builtin_fiducial(d: int) -> SicFiducial:
    """A fiducial vector for dimensions 2 through 5, verified on first use.

    The d = 2 vector is exact (the principal eigenvector of a tetrahedron
    projector); the others are stored numerically to 40 digits and were
    found by the search in scripts/find_fiducials.py.  The orbit is checked
    against the SIC Gram form once per process before the vector is handed
    out.
    """
    if d == 2:
        c = np.sqrt((1 + 1 / np.sqrt(3)) / 2)
        s = np.sqrt((1 - 1 / np.sqrt(3)) / 2)
        v = np.array([c, np.exp(1j * np.pi / 4) * s])
        fid = SicFiducial.from_vector(v, FiducialProvenance.BUILT_IN)
    elif d in (3, 4, 5):
        text = resources.files("miclab").joinpath("data/fiducials.json").read_text()
        record = json.loads(text)[str(d)]
        v = np.array([float(re) + 1j * float(im) for re, im in record["vector"]])
        v = v / np.linalg.norm(v)
        fid = SicFiducial.from_vector(v, FiducialProvenance.BUILT_IN)
    else:
        raise WrongDimension(f"no built-in fiducial for d={d}; supported: 2..5")
    sic_from_fiducial(fid)
    return fid


def sic_from_fiducial(f, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """SIC built as the Weyl-Heisenberg orbit of a fiducial vector.

    Accepts a SicFiducial or a raw unit vector.  Raises NotSic if the orbit
    Gram matrix deviates from the symmetric form by more than 1e-8 in any
    entry.
    """
    if not isinstance(f, SicFiducial):
        f = SicFiducial.from_vector(f)
    rho = np.outer(f.vector, f.vector.conj())
    mic = wh_mic(rho, tol=tol)
    deviation = float(np.abs(mic.gram - sic_gram_matrix(f.dim)).max())
    if deviation > 1e-8:
        raise NotSic(deviation)
    return mic


def sic_mic(d: int, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Built-in SIC for d in 2..5, as a Weyl-Heisenberg fiducial orbit."""
    return sic_from_fiducial(builtin_fiducial(d), tol)


# ------------------------------------------------------------ orthocross MIC

def orthocross_projectors(d: int) -> list[np.ndarray]:
    """The d^2 projectors generating the orthocross MIC.

    First the d computational-basis projectors |j><j|, then projectors onto
    (|j> + |k>)/sqrt(2) for j < k in lexicographic order, then onto
    (|j> + i |k>)/sqrt(2), same ordering.
    """
    _check_dimension(d)
    out = []
    for j in range(d):
        p = np.zeros((d, d), dtype=complex)
        p[j, j] = 1.0
        out.append(p)
    for phase in (1.0, 1.0j):
        for j, k in itertools.combinations(range(d), 2):
            v = np.zeros(d, dtype=complex)
            v[j] = 1.0
            v[k] = phase
            v /= np.sqrt(2)
            out.append(np.outer(v, v.conj()))
    return out


def orthocross_mic(d: int, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """MIC obtained by squashing the orthocross projectors.

    With Omega the sum of the projectors, the effects are
    E_a = Omega^{-1/2} P_a Omega^{-1/2}.  Omega has every diagonal entry
    equal to d, every entry above the diagonal (1-i)/2 and every entry
    below (1+i)/2, so its spectrum is available in closed form
    (orthocross_omega_spectrum).  The resulting MIC is biased: no outcome
    can ever have probability 1, or even probability above
    1 / (d - (1 + cot(3 pi / 4d)) / 2).
    """
    projectors = orthocross_projectors(d)
    return mic_from_psd_basis(projectors, tol)


def orthocross_omega_spectrum(d: int) -> np.ndarray:
    """Eigenvalues of the orthocross Omega matrix, ascending.

    lambda_m = d + (cot(pi (4m+1) / 4d) - 1) / 2 for m = 0 .. d-1.
    They sum to d^2.
    """
    _check_dimension(d)
    m = np.arange(d)
    lam = d + 0.5 * (1.0 / np.tan(np.pi * (4 * m + 1) / (4 * d)) - 1.0)
    return _frozen(np.sort(lam))


def orthocross_probability_bound(d: int) -> float:
    """Largest probability any state can assign to any orthocross outcome."""
    lam_min = float(orthocross_omega_spectrum(d)[0])
    return 1.0 / lam_min


# ----------------------------------------------- generic squashed-basis MICs

def mic_from_psd_basis(basis, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """MIC from any linearly independent basis of d^2 PSD operators.

    With Omega the sum of the basis elements, the effects are
    E_i = Omega^{-1/2} A_i Omega^{-1/2}.  MICs themselves are fixed points
    of this map (their Omega is the identity), and rank-1 inputs give
    rank-1 MICs.  Raises LinearlyDependent if the basis does not span,
    NotPsd for a bad element, SingularOperator if Omega is singular.
    """
    mats = [np.asarray(a, dtype=complex) for a in basis]
    if not mats:
        raise WrongCount(0, 1)
    d = mats[0].shape[0]
    _check_dimension(d)
    if len(mats) != d * d:
        raise WrongCount(len(mats), d * d)
    stack = np.array(mats)
    basis_gram = np.einsum("iab,jba->ij", stack, stack).real
    rank = numerical_rank(basis_gram, tol)
    if rank != d * d:
        raise LinearlyDependent(rank, d * d, "input basis")
    omega = stack.sum(axis=0)
    r = inv_sqrt_psd(omega, tol)
    effects = np.einsum("ab,kbc,cd->kad", r, stack, r)
    return mic_from_matrices(list(effects), tol)


# ------------------------------------------------------------ equiangular MICs

def equiangular_mic(sic: Mic, beta: float, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Depolarized SIC: E_i = (beta/d) P_i + (1-beta)/d^2 I.

    P_i are the SIC projectors (d times the SIC effects).  beta must be
    nonzero and lie in [-1/(d-1), 1]; the endpoints keep every effect
    positive semidefinite.  The Gram matrix keeps the equiangular form
    alpha delta_ij + zeta with alpha = 1/d - d^2 zeta and
    1/(d^2 (d+1)) <= zeta < 1/d^3.
    """
    d = sic.dim
    deviation = float(np.abs(sic.gram - sic_gram_matrix(d)).max())
    if deviation > 1e-8:
        raise NotSic(deviation)
    if beta == 0:
        raise BetaZero("beta must be nonzero")
    lo = -1.0 / (d - 1) if d > 1 else -1.0
    if not (lo - 1e-12 <= beta <= 1 + 1e-12):
        raise BetaOutOfRange(f"beta={beta!r} outside [{lo!r}, 1]")
    eye = np.eye(d)
    effects = [
        (beta / d) * (d * e.matrix) + (1 - beta) / (d * d) * eye
        for e in sic.effects
    ]
    return mic_from_matrices(effects, tol)


# ------------------------------------------------ odd-dimension covariant MIC

def appleby_mic(d: int, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Weyl-Heisenberg covariant MIC with rank-(d+1)/2 effects, d odd.

    B is the normalized sum of all nonidentity displacement operators,
    B_kl its displacement conjugates, and
    E_kl = (1/d^2)(I + B_kl / sqrt(d+1)), row-major in (k, l).
    The MIC is unbiased, and the quasiprobability transform built on it
    (see analysis.wigner_quasiprobs) is a discrete Wigner function.
    """
    _check_dimension(d)
    if d % 2 == 0:
        raise EvenDimension(f"odd dimension required, got {d}")
    if d < 3:
        raise ValueError(f"defined for d >= 3, got {d}")
    ops = _displacement_basis(d)
    b = ops[1:].sum(axis=0) / np.sqrt(d + 1)
    b = (b + b.conj().T) / 2
    conjugates = np.einsum("kab,bc,kdc->kad", ops, b, ops.conj())
    eye = np.eye(d)
    effects = (eye[None, :, :] + conjugates / np.sqrt(d + 1)) / (d * d)
    return mic_from_matrices(list(effects), tol)


# ------------------------------------------------------------- tensor products

def tensorhedron_mic(component: Mic, n: int, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """n-fold tensor product MIC, factor indices ordered row-major.

    The effect at flat index (i_1, ..., i_n) is E_{i_1} x ... x E_{i_n},
    with the first factor varying slowest.  The Gram matrix is the n-fold
    Kronecker power of the component Gram matrix, so the spectrum consists
    of all n-fold products of component eigenvalues.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 factors, got {n}")
    dim = component.dim ** n
    if dim > MAX_DIMENSION:
        raise EnvelopeExceeded(dim, MAX_DIMENSION)
    mats = component.matrices()
    effects = []
    for combo in itertools.product(range(len(mats)), repeat=n):
        e = mats[combo[0]]
        for i in combo[1:]:
            e = kron(e, mats[i])
        effects.append(e)
    return mic_from_matrices(effects, tol)


# ------------------------------------------- a rank-1 MIC with orthogonal pairs

def example_seven_orthogonal(tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Rank-1 unbiased MIC in d = 3 whose Gram matrix has exactly seven
    vanishing off-diagonal pairs.

    Each effect is (1/3) |v><v| for the nine unit vectors below.  The MIC is
    not group covariant, which shows orthogonal pairs do not require any
    group structure; seven is conjectured to be the maximum for d = 3.
    """
    s2 = 1 / np.sqrt(2)
    s3 = 1 / np.sqrt(3)
    raw = [
        [1, 0, 0],
        [0, 1, 0],
        [s2, 0, s2],
        [0, s2, s2],
        [s2, 0, -1j * s2],
        [0, s2, -1j * s2],
        [s3, -1j * s3, 1j * s3],
        [5 / np.sqrt(40), (-1 + 2j) / np.sqrt(40), (-3 + 1j) / np.sqrt(40)],
        [1 / np.sqrt(24), (3 + 2j) / np.sqrt(24), (-3 + 1j) / np.sqrt(24)],
    ]
    effects = [np.outer(v, np.conj(v)) / 3 for v in (np.asarray(v) for v in raw)]
    return mic_from_matrices(effects, tol)


# ----------------------------------------------------- near-orthogonal family

def eigenprojector_basis(h, count: int | None = None,
                         tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Rank-1 eigenprojectors of a Hermitian matrix, zero-padded to count.

    The projectors sum to the identity, so the padded list is a valid POVM
    (of deficient operator span) suitable as the orthogonal end of
    near_orthogonal_family.
    """
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    _check_dimension(d)
    if count is None:
        count = d * d
    if count < d:
        raise WrongCount(count, d)
    _, v = eigh(h, tol)
    out = [np.outer(v[:, i], v[:, i].conj()) for i in range(d)]
    out.extend(np.zeros((d, d), dtype=complex) for _ in range(count - d))
    return out


def near_orthogonal_family(a_basis, b: Mic, t: float,
                           tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Convex interpolation E_i = t A_i + (1-t) B_i toward an orthogonal set.

    a_basis must be d^2 PSD matrices summing to the identity (typically
    eigenprojector_basis output) and b a MIC.  For 0 < t < 1 the mixture is
    a valid POVM; it remains a MIC as long as the interpolated effects stay
    linearly independent, so the Gram matrix can be pushed arbitrarily close
    to the diagonal matrix of weights while informational completeness
    survives.  Raises LinearlyDependent at parameter values where the span
    collapses.
    """
    if not (0 < t < 1):
        raise ValueError(f"t must lie strictly between 0 and 1, got {t!r}")
    a_povm = validate_povm(a_basis, tol)
    if a_povm.dim != b.dim:
        raise WrongDimension(f"basis dimension {a_povm.dim} vs MIC dimension {b.dim}")
    n = b.dim * b.dim
    if len(a_povm) != n:
        raise WrongCount(len(a_povm), n)
    effects = [
        t * a.matrix + (1 - t) * e.matrix
        for a, e in zip(a_povm.effects, b.effects)
    ]
    return mic_from_matrices(effects, tol)
