"""POVM and MIC container invariants: validation, Gram, duals, Born maps."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from miclab.constructions import mic_from_psd_basis, sic_mic, sic_qubit
from miclab.errors import (
    IllConditionedGram,
    LinearlyDependent,
    NotPsd,
    ShapeMismatch,
    SumNotIdentity,
    WrongCount,
)
from miclab.povm import (
    born_probabilities,
    collision_probability,
    dual_basis,
    effect_eigenvalue_ranges,
    effect_ranks,
    gram,
    is_unbiased,
    mic_from_matrices,
    purity_form,
    rank1_mic_check,
    reconstruct_state,
    rescaled_vector_gram,
    validate_mic,
    validate_povm,
)


def random_psd(d, rng):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return a @ a.conj().T


def random_mic_fixture(d, seed):
    rng = np.random.default_rng(seed)
    return mic_from_psd_basis([random_psd(d, rng) for _ in range(d * d)])


def random_state(d, rng):
    rho = random_psd(d, rng)
    return rho / np.trace(rho)


# ------------------------------------------------------------ validation

def test_validate_povm_rejects_non_psd():
    bad = [np.diag([1.5, -0.5]).astype(complex), np.diag([-0.5, 1.5]).astype(complex)]
    with pytest.raises(NotPsd):
        validate_povm(bad)


def test_validate_povm_rejects_bad_sum():
    half = [np.eye(2, dtype=complex) / 4] * 2
    with pytest.raises(SumNotIdentity):
        validate_povm(half)


def test_validate_povm_rejects_ragged_shapes():
    with pytest.raises(ShapeMismatch):
        validate_povm([np.eye(2, dtype=complex) / 2, np.eye(3, dtype=complex)])


def test_validate_mic_wrong_count():
    povm = validate_povm([np.eye(2, dtype=complex) / 3] * 3)
    with pytest.raises(WrongCount):
        validate_mic(povm)


def test_validate_mic_linearly_dependent():
    # four copies of I/4 sum to identity but span one dimension
    povm = validate_povm([np.eye(2, dtype=complex) / 4] * 4)
    with pytest.raises(LinearlyDependent):
        validate_mic(povm)


# ------------------------------------------------------------------ gram

def test_gram_entries_sum_to_dimension():
    for d, seed in [(2, 0), (3, 1), (4, 2)]:
        mic = random_mic_fixture(d, seed)
        assert mic.gram.sum() == pytest.approx(d, abs=1e-10)
        assert np.abs(mic.gram - mic.gram.T).max() < 1e-14


def test_gram_of_sic_is_closed_form():
    mic = sic_qubit()
    d = 2
    expected = (d * np.eye(d * d) + 1) / (d * d * (d + 1.0))
    assert np.abs(mic.gram - expected).max() < 1e-12


def test_weights_are_traces():
    mic = random_mic_fixture(3, 4)
    assert np.allclose(mic.weights(), [np.trace(m).real for m in mic.matrices()])


# ------------------------------------------------------------------ dual

def test_dual_basis_biorthogonal():
    mic = random_mic_fixture(3, 7)
    duals = dual_basis(mic)
    check = np.einsum("iab,jba->ij", mic.matrices(), np.array(duals.elements))
    assert np.abs(check - np.eye(9)).max() < 1e-8


def test_dual_basis_rejects_singular_gram():
    mic = sic_qubit()
    object.__setattr__(mic, "gram", np.diag([1.0, 1.0, 1.0, 1e-14]))
    with pytest.raises(IllConditionedGram):
        dual_basis(mic)


def test_effect_ranks_and_ranges():
    mic = sic_qubit()
    assert effect_ranks(mic) == [1, 1, 1, 1]
    for lo, hi in effect_eigenvalue_ranges(mic):
        assert lo == pytest.approx(0.0, abs=1e-12)
        assert hi == pytest.approx(0.5, abs=1e-12)


# ------------------------------------------------------- born and inverse

def test_born_probabilities_normalize():
    mic = random_mic_fixture(2, 9)
    rho = random_state(2, np.random.default_rng(10))
    p = born_probabilities(rho, mic)
    assert p.sum() == pytest.approx(1.0, abs=1e-12)
    assert p.min() >= -1e-12


def test_reconstruction_inverts_measurement():
    for d, seed in [(2, 11), (3, 12)]:
        mic = random_mic_fixture(d, seed)
        rho = random_state(d, np.random.default_rng(seed + 100))
        p = born_probabilities(rho, mic)
        assert np.abs(reconstruct_state(p, mic) - rho).max() < 1e-9


def test_purity_form_matches_state_purity():
    mic = random_mic_fixture(3, 13)
    rng = np.random.default_rng(14)
    rho = random_state(3, rng)
    p = born_probabilities(rho, mic)
    assert purity_form(p, mic.gram) == pytest.approx(
        np.trace(rho @ rho).real, abs=1e-9)


def test_collision_probability_bounds():
    assert collision_probability(np.full(4, 0.25)) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        collision_probability(np.array([0.7, 0.7, -0.4]))


# -------------------------------------------------------- rank-1 criterion

def test_rank1_mic_check_accepts_sic():
    mic = sic_qubit()
    vecs, weights = [], []
    for m in mic.matrices():
        w, v = np.linalg.eigh(m)
        vecs.append(v[:, -1])
        weights.append(w[-1])
    g = rescaled_vector_gram(vecs, weights)
    assert np.linalg.matrix_rank(g) == 2
    is_povm, is_mic = rank1_mic_check(vecs, weights)
    assert is_povm and is_mic


def test_rank1_mic_check_rejects_small_family():
    # two orthogonal projectors form a POVM but not a MIC
    vecs = [np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)]
    is_povm, is_mic = rank1_mic_check(vecs, [1.0, 1.0])
    assert is_povm and not is_mic


def test_unbiasedness_predicate():
    assert is_unbiased(sic_mic(3))
    biased = random_mic_fixture(2, 20)
    assert not is_unbiased(biased)


# -------------------------------------------------------------- properties

@settings(max_examples=25, deadline=None, derandomize=True)
@given(st.integers(min_value=2, max_value=4), st.integers(min_value=0, max_value=10_000))
def test_measure_then_reconstruct_roundtrip(d, seed):
    rng = np.random.default_rng(seed)
    try:
        mic = mic_from_psd_basis([random_psd(d, rng) for _ in range(d * d)])
    except (LinearlyDependent, IllConditionedGram):
        # a numerically dependent draw is valid refusal, not a roundtrip bug
        assume(False)
    rho = random_state(d, rng)
    p = born_probabilities(rho, mic)
    assert p.sum() == pytest.approx(1.0, abs=1e-10)
    # reconstruction accuracy degrades with Gram conditioning
    bound = max(1e-8, 100 * np.finfo(float).eps * np.linalg.cond(mic.gram))
    assert np.abs(reconstruct_state(p, mic) - rho).max() < bound
    assert 1.0 / (d * d) - 1e-12 <= collision_probability(np.abs(p) / np.abs(p).sum())


@settings(max_examples=25, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10_000))
def test_gram_is_psd_and_sums_to_d(seed):
    try:
        mic = random_mic_fixture(3, seed)
    except LinearlyDependent:
        assume(False)
    w = np.linalg.eigvalsh(mic.gram)
    assert w[0] > 0
    assert mic.gram.sum() == pytest.approx(3.0, abs=1e-9)
