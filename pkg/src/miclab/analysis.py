"""Structural analysis of MICs.

Implements the numerical checks behind the library's structural claims:

* the three equivalent characterizations of unbiasedness (uniform weights,
  doubly stochastic d G, maximal Gram eigenvalue exactly 1/d);
* indefiniteness of every dual-basis element, with its corollaries (no MIC
  is an orthogonal basis, no outcome can be certain, an effect can never be
  an unscaled projector, and d = 2 MICs admit no orthogonal pair at all);
* distance measures from the SIC ideal: the squared Frobenius gap between
  the Gram matrix and the orthogonality target (1/d) delta_ij, bounded below
  by (d-1)/(d+1) with equality exactly for SICs, and norms of
  I - (1/d) G^{-1}, minimized by SICs for every unitarily invariant norm;
* the conditional-probability matrix Phi that rewrites cascaded two-step
  probabilities in terms of measured MIC outcome probabilities, which is
  column-quasistochastic and never entirely nonnegative;
* a discrete Wigner quasiprobability transform for the odd-dimensional
  covariant construction;
* numerical probes of three open conjectures (reported, never asserted).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import CONDITION_LIMIT, DEFAULT_TOL, ToleranceConfig
from .errors import (
    BiasedMic,
    IllConditionedGram,
    ShapeMismatch,
    SingularConditionalMatrix,
    WrongCount,
)
from .linalg import Definiteness, definiteness, eigvalsh
from .povm import Mic, Povm, _check_state, born_probabilities, dual_basis, is_unbiased


@dataclass(frozen=True)
class UnbiasedEquivalence:
    """The three unbiasedness predicates with their numerical witnesses."""

    weights_uniform: bool
    doubly_stochastic: bool
    max_eigenvalue_pinned: bool
    max_weight_deviation: float
    max_sum_deviation: float
    max_eigenvalue_gap: float

    @property
    def consistent(self) -> bool:
        return self.weights_uniform == self.doubly_stochastic == self.max_eigenvalue_pinned


@dataclass(frozen=True)
class OrthogonalityReport:
    """Vanishing off-diagonal Gram entries of a MIC."""

    pairs: tuple[tuple[int, int], ...]
    count: int
    min_offdiagonal: float


@dataclass(frozen=True)
class ClassicalityScores:
    """How far a Gram matrix sits from the orthogonal ideal.

    frobenius_gap is the squared Frobenius distance between G and
    (1/d) delta_ij; bound is its SIC-saturated minimum (d-1)/(d+1).
    inv_gram_distance is ||I - (1/d) G^{-1}|| and is None until computed.
    """

    frobenius_gap: float
    bound: float
    inv_gram_distance: float | None = None


@dataclass(frozen=True, eq=False)
class PhiMatrix:
    """Born-matrix inverse mapping MIC probabilities to cascade predictions."""

    matrix: np.ndarray
    condition_number: float


def unbiased_equivalence_report(mic: Mic, tol: ToleranceConfig = DEFAULT_TOL,
                                eig_window: float = 1e-9) -> UnbiasedEquivalence:
    """Evaluate the three equivalent unbiasedness tests on one MIC.

    Uniform weights are tested within eig_window; double stochasticity of
    d G by max row/column-sum deviation from 1 within d * zero_tol; the
    eigenvalue test asks |lambda_max(G) - 1/d| <= eig_window.  The largest
    Gram eigenvalue can never fall below 1/d, so the last test is one-sided
    in practice.
    """
    d = mic.dim
    weight_dev = float(np.abs(mic.weights() - 1.0 / d).max())
    dg = d * mic.gram
    sums = np.concatenate([dg.sum(axis=0) - 1.0, dg.sum(axis=1) - 1.0])
    sum_dev = float(np.abs(sums).max())
    lam_max = float(eigvalsh(mic.gram, tol)[-1])
    eig_gap = abs(lam_max - 1.0 / d)
    return UnbiasedEquivalence(
        weights_uniform=weight_dev <= eig_window,
        doubly_stochastic=sum_dev <= d * tol.zero_tol,
        max_eigenvalue_pinned=eig_gap <= eig_window,
        max_weight_deviation=weight_dev,
        max_sum_deviation=sum_dev,
        max_eigenvalue_gap=eig_gap,
    )


def dual_indefiniteness(mic: Mic, tol: ToleranceConfig = DEFAULT_TOL
                        ) -> tuple[bool, list[tuple[float, float]]]:
    """Check that every dual element is indefinite.

    Returns (all_indefinite, eigenvalue ranges).  An element counts as
    indefinite when its smallest eigenvalue is below -zero_tol and its
    largest above +zero_tol.  For any valid MIC this always holds; a False
    here signals a numerical breakdown, not a counterexample.
    """
    duals = dual_basis(mic, tol)
    ranges = []
    all_indefinite = True
    for el in duals.elements:
        if definiteness(el, tol) is not Definiteness.INDEFINITE:
            all_indefinite = False
        w = eigvalsh(el, tol)
        ranges.append((float(w[0]), float(w[-1])))
    return all_indefinite, ranges


def orthogonal_pairs(g, tol: float = DEFAULT_TOL.zero_tol) -> OrthogonalityReport:
    """Index pairs i < j with [G]_ij below tol.

    Off-diagonal Gram entries of a POVM are traces of products of PSD
    operators, hence nonnegative; an entry below tol marks an orthogonal
    pair of effects.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ShapeMismatch(f"expected a square Gram matrix, got {g.shape}")
    n = g.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    off = g[iu, ju]
    mask = off <= tol
    pairs = tuple((int(i), int(j)) for i, j in zip(iu[mask], ju[mask]))
    return OrthogonalityReport(
        pairs=pairs,
        count=len(pairs),
        min_offdiagonal=float(off.min()) if off.size else float("inf"),
    )


def frobenius_orthogonality_gap(mic: Mic, tol: ToleranceConfig = DEFAULT_TOL
                                ) -> ClassicalityScores:
    """Squared Frobenius distance of the Gram matrix from (1/d) delta_ij.

    Defined for unbiased MICs (BiasedMic otherwise).  The gap is bounded
    below by (d-1)/(d+1), with equality exactly for SICs, so no unbiased
    MIC can have an orthogonal (or nearly orthogonal) effect set.
    """
    if not is_unbiased(mic):
        raise BiasedMic("frobenius_orthogonality_gap requires an unbiased MIC")
    d = mic.dim
    target = np.eye(d * d) / d
    gap = float(((target - mic.gram) ** 2).sum())
    return ClassicalityScores(frobenius_gap=gap, bound=(d - 1.0) / (d + 1.0))


_NORMS = ("frobenius", "spectral", "trace")


def inv_gram_distance(mic: Mic, norm: str = "frobenius",
                      tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Unitarily invariant norm of I - (1/d) G^{-1} for an unbiased MIC.

    SICs minimize this distance over unbiased MICs for every unitarily
    invariant norm; the Frobenius value for a SIC is d sqrt(d^2 - 1).
    """
    if norm not in _NORMS:
        raise ValueError(f"norm must be one of {_NORMS}, got {norm!r}")
    if not is_unbiased(mic):
        raise BiasedMic("inv_gram_distance requires an unbiased MIC")
    g = mic.gram
    cond = float(np.linalg.cond(g))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise IllConditionedGram(cond)
    n = g.shape[0]
    a = np.eye(n) - np.linalg.inv(g) / mic.dim
    a = (a + a.T) / 2
    w = np.abs(np.linalg.eigvalsh(a))
    if norm == "frobenius":
        return float(np.sqrt((w ** 2).sum()))
    if norm == "spectral":
        return float(w.max())
    return float(w.sum())


def classicality_scores(mic: Mic, norm: str = "frobenius",
                        tol: ToleranceConfig = DEFAULT_TOL) -> ClassicalityScores:
    """Both SIC-distance measures in one record."""
    partial = frobenius_orthogonality_gap(mic, tol)
    return ClassicalityScores(
        frobenius_gap=partial.frobenius_gap,
        bound=partial.bound,
        inv_gram_distance=inv_gram_distance(mic, norm, tol),
    )


def phi_matrix(mic: Mic, post_states, tol: ToleranceConfig = DEFAULT_TOL) -> PhiMatrix:
    """Inverse of the conditional Born matrix [M]_ij = tr(H_i sigma_j).

    H_i are the MIC effects and sigma_j the d^2 post-measurement states.
    Phi = M^{-1} rewrites cascaded probabilities in terms of first-stage
    MIC probabilities (see cascaded_probability).  Its columns always sum
    to 1, and for quantum inputs it always contains a negative entry.
    Raises SingularConditionalMatrix when cond(M) reaches 1e12.
    """
    d = mic.dim
    n = d * d
    states = [_check_state(s, d, tol) for s in post_states]
    if len(states) != n:
        raise WrongCount(len(states), n)
    m = np.einsum("iab,jba->ij", mic.matrices(), np.array(states)).real
    cond = float(np.linalg.cond(m))
    if not np.isfinite(cond) or cond >= CONDITION_LIMIT:
        raise SingularConditionalMatrix(cond)
    phi = np.linalg.inv(m)
    return PhiMatrix(matrix=phi, condition_number=cond)


def cascaded_probability(rho, mic: Mic, post_states, second_povm,
                         tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Two-step outcome distribution computed through the Phi matrix.

    Measure the MIC on rho, prepare sigma_i on outcome i, then measure the
    second POVM: Q_j = sum_ik tr(sigma_i D_j) [Phi]_ik tr(rho H_k).  The
    result reproduces the direct Born probabilities tr(rho D_j) of the
    second POVM exactly, which is the consistency condition the Phi matrix
    encodes.  second_povm may be a Povm or a plain sequence of effects.
    """
    phi = phi_matrix(mic, post_states, tol)
    p_first = born_probabilities(rho, mic, tol)
    second = (second_povm.matrices() if isinstance(second_povm, Povm)
              else np.array([np.asarray(b, dtype=complex) for b in second_povm]))
    cond_second = np.einsum("jab,iba->ji", second,
                            np.array([np.asarray(s, dtype=complex) for s in post_states])).real
    return cond_second @ phi.matrix @ p_first


def wigner_quasiprobs(rho, mic: Mic, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Quasiprobability representation W_i = (d+1) tr(E_i rho) - 1/d.

    Designed for the odd-dimension covariant MIC (appleby_mic), where it is
    a discrete Wigner function.  The entries always sum to 1 and can be
    negative; for the maximally mixed state every entry is 1/d^2.
    """
    p = born_probabilities(rho, mic, tol)
    return (mic.dim + 1.0) * p - 1.0 / mic.dim


def group_covariance_check(g, tol: float = 1e-9) -> bool:
    """True iff every Gram row is a permutation of the first row.

    Group-covariant MICs always pass (conjugation by the group permutes
    effects), so a False certifies non-covariance; True is necessary but
    not sufficient.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ShapeMismatch(f"expected a square Gram matrix, got {g.shape}")
    reference = np.sort(g[0])
    for row in g[1:]:
        if np.abs(np.sort(row) - reference).max() > tol:
            return False
    return True


# ------------------------------------------------------------ conjecture probes

class ProbeKind:
    """Names of the numerical conjecture probes.

    Probes report evidence; nothing here is ever asserted as a theorem.
    """

    ORTHOCROSS_MIN_GRAM = "orthocross-min-gram"
    ORTHOCROSS_INV_GRAM_HALF_INT = "orthocross-invgram-halfint"
    RANK1_ORTHO_PAIR_SEARCH = "rank1-orthopair-search"

    ALL = (ORTHOCROSS_MIN_GRAM, ORTHOCROSS_INV_GRAM_HALF_INT, RANK1_ORTHO_PAIR_SEARCH)


def conjecture_probes(kind: str, **params) -> dict:
    """Run one conjecture probe and return a flat report.

    orthocross-min-gram: smallest off-diagonal Gram entry of the orthocross
    MIC for each d in d_values; conjectured positive but approaching zero.

    orthocross-invgram-halfint: largest deviation of the entries of
    2 G^{-1} from integers for the orthocross MIC; conjectured to vanish,
    i.e. the inverse Gram entries are conjectured to be half-integers.

    rank1-orthopair-search: randomized search over rank-1 MICs in d = 3 for
    Gram zeros.  The known seven-pair example is always included as a seed
    candidate; the report states the best count found and where.
    """
    if kind == ProbeKind.ORTHOCROSS_MIN_GRAM:
        return _probe_min_gram(**params)
    if kind == ProbeKind.ORTHOCROSS_INV_GRAM_HALF_INT:
        return _probe_half_int(**params)
    if kind == ProbeKind.RANK1_ORTHO_PAIR_SEARCH:
        return _probe_pair_search(**params)
    raise ValueError(f"unknown probe kind {kind!r}; valid: {ProbeKind.ALL}")


def _probe_min_gram(d_values=(2, 3, 4, 5, 6)) -> dict:
    from .constructions import orthocross_mic

    report: dict = {"probe": ProbeKind.ORTHOCROSS_MIN_GRAM}
    values = []
    for d in d_values:
        g = orthocross_mic(d).gram
        n = g.shape[0]
        iu, ju = np.triu_indices(n, k=1)
        values.append(float(g[iu, ju].min()))
        report[f"min_offdiagonal_d{d}"] = values[-1]
    report["all_positive"] = bool(min(values) > 0)
    report["decreasing_in_d"] = bool(
        all(a > b for a, b in zip(values, values[1:])))
    return report


def _probe_half_int(d_values=(2, 3, 4, 5, 6)) -> dict:
    from .constructions import orthocross_mic

    report: dict = {"probe": ProbeKind.ORTHOCROSS_INV_GRAM_HALF_INT}
    worst = 0.0
    for d in d_values:
        doubled = 2 * np.linalg.inv(orthocross_mic(d).gram)
        residue = float(np.abs(doubled - np.round(doubled)).max())
        report[f"residue_d{d}"] = residue
        worst = max(worst, residue)
    report["max_residue"] = worst
    return report


def _probe_pair_search(restarts: int = 1000, seed: int = 0,
                       pair_tol: float = DEFAULT_TOL.zero_tol) -> dict:
    from .constructions import example_seven_orthogonal
    from .ensembles import MicKind, random_mic

    rng = np.random.default_rng(seed)
    best_count = -1
    best_source = ""
    random_best = 0
    candidates = [("seven-orthogonal-example", example_seven_orthogonal())]
    for i in range(restarts):
        candidates.append((f"random-{i}", None))
    for label, mic in candidates:
        if mic is None:
            mic = random_mic(MicKind.GENERIC_RANK1, 3, rng)
        count = orthogonal_pairs(mic.gram, pair_tol).count
        if label.startswith("random-"):
            random_best = max(random_best, count)
        if count > best_count:
            best_count = count
            best_source = label
    return {
        "probe": ProbeKind.RANK1_ORTHO_PAIR_SEARCH,
        "restarts": restarts,
        "seed": seed,
        "pair_tolerance": pair_tol,
        "best_count": best_count,
        "best_source": best_source,
        "random_best_count": random_best,
    }
