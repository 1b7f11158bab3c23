"""Closed-form checks for each MIC constructor."""

import numpy as np
import pytest

from miclab.analysis import group_covariance_check, orthogonal_pairs
from miclab.constructions import (
    SicFiducial,
    appleby_mic,
    builtin_fiducial,
    eigenprojector_basis,
    equiangular_mic,
    example_seven_orthogonal,
    mic_from_psd_basis,
    near_orthogonal_family,
    orthocross_mic,
    orthocross_omega_spectrum,
    orthocross_probability_bound,
    sic_from_fiducial,
    sic_gram_matrix,
    sic_mic,
    sic_qubit,
    tensorhedron_mic,
    wh_displacement,
    wh_mic,
)
from miclab.errors import (
    BetaOutOfRange,
    BetaZero,
    DegenerateFiducial,
    EnvelopeExceeded,
    EvenDimension,
    LinearlyDependent,
    NotSic,
)
from miclab.povm import born_probabilities, is_unbiased


# ------------------------------------------------------------------- SICs

def test_sic_qubit_gram_closed_form():
    assert np.abs(sic_qubit().gram - sic_gram_matrix(2)).max() < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_sic_mic_gram_closed_form(d):
    mic = sic_mic(d)
    assert np.abs(mic.gram - sic_gram_matrix(d)).max() < 1e-8
    assert is_unbiased(mic)


def test_sic_gram_spectrum():
    w = np.linalg.eigvalsh(sic_gram_matrix(3))
    assert w[-1] == pytest.approx(1 / 3)
    assert np.allclose(w[:-1], 1 / 12)


def test_sic_from_fiducial_rejects_generic_vector():
    rng = np.random.default_rng(0)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    f = SicFiducial.from_vector(v / np.linalg.norm(v))
    with pytest.raises(NotSic):
        sic_from_fiducial(f)


def test_builtin_fiducial_is_unit_and_reproducible():
    f = builtin_fiducial(4)
    assert np.linalg.norm(f.vector) == pytest.approx(1.0, abs=1e-12)
    assert np.array_equal(f.vector, builtin_fiducial(4).vector)


# ------------------------------------------------------------ WH covariance

def test_wh_displacements_unitary_and_traceless():
    d = 3
    for k in range(d):
        for l in range(d):
            dd = wh_displacement(d, k, l)
            assert np.abs(dd @ dd.conj().T - np.eye(d)).max() < 1e-12
            if (k, l) != (0, 0):
                assert abs(np.trace(dd)) < 1e-12


def test_wh_mic_is_unbiased_with_permuted_gram_rows():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho = a @ a.conj().T
    rho = rho / np.trace(rho)
    mic = wh_mic(rho)
    assert is_unbiased(mic)
    g = mic.gram
    row0 = np.sort(g[0])
    for row in g[1:]:
        assert np.abs(np.sort(row) - row0).max() < 1e-10
    assert group_covariance_check(g)


def test_wh_mic_rejects_degenerate_fiducial():
    with pytest.raises(DegenerateFiducial):
        wh_mic(np.eye(3) / 3)


# -------------------------------------------------------------- orthocross

@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_orthocross_spectrum_and_bound(d):
    mic = orthocross_mic(d)
    spectrum = orthocross_omega_spectrum(d)
    assert spectrum[0] > 0
    bound = orthocross_probability_bound(d)
    assert 0 < bound < 1
    # no state can exceed the bound; try eigenstates of each effect
    rng = np.random.default_rng(d)
    for _ in range(50):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        v /= np.linalg.norm(v)
        p = born_probabilities(np.outer(v, v.conj()), mic)
        assert p.max() <= bound + 1e-12


def test_orthocross_is_biased():
    assert not is_unbiased(orthocross_mic(3))


# ------------------------------------------------------------- equiangular

def test_equiangular_gram_closed_form_qubit():
    mic = equiangular_mic(sic_qubit(), 0.5)
    g = mic.gram
    off = g[~np.eye(4, dtype=bool)]
    assert np.abs(off - 11 / 96).max() < 1e-12
    assert np.abs(np.diag(g) - 5 / 32).max() < 1e-12


def test_equiangular_beta_validation():
    with pytest.raises(BetaZero):
        equiangular_mic(sic_qubit(), 0.0)
    with pytest.raises(BetaOutOfRange):
        equiangular_mic(sic_qubit(), 2.5)


def test_equiangular_beta_one_is_the_sic():
    mic = equiangular_mic(sic_mic(3), 1.0)
    assert np.abs(mic.gram - sic_gram_matrix(3)).max() < 1e-8


# ----------------------------------------------------------------- appleby

def test_appleby_requires_odd_dimension():
    with pytest.raises(EvenDimension, match="odd dimension required"):
        appleby_mic(4)


@pytest.mark.parametrize("d", [3, 5])
def test_appleby_rank_and_weights(d):
    mic = appleby_mic(d)
    assert is_unbiased(mic)
    for m in mic.matrices():
        w = np.linalg.eigvalsh(m)
        assert np.sum(w > 1e-9) == (d + 1) // 2


# -------------------------------------------------------------- tensor MICs

def test_tensorhedron_gram_is_kron_power():
    q = sic_qubit()
    mic = tensorhedron_mic(q, 2)
    assert mic.dim == 4
    assert np.abs(mic.gram - np.kron(q.gram, q.gram)).max() < 1e-12
    w = np.sort(np.linalg.eigvalsh(mic.gram))
    expected = np.sort([1 / 4] + [1 / 12] * 6 + [1 / 36] * 9)
    assert np.abs(w - expected).max() < 1e-12


def test_tensorhedron_respects_dimension_envelope():
    with pytest.raises(EnvelopeExceeded):
        tensorhedron_mic(sic_mic(3), 4)  # 3^4 = 81 > 32


# ----------------------------------------------------- seven-pair example

def test_example_seven_orthogonal_pairs():
    mic = example_seven_orthogonal()
    assert is_unbiased(mic)
    rep = orthogonal_pairs(mic.gram)
    assert rep.count == 7
    assert not group_covariance_check(mic.gram)


# ------------------------------------------------- near-orthogonal family

def padded_basis(d, interleave=False):
    projs = eigenprojector_basis(np.diag(np.arange(d, dtype=float)))[:d]
    slots = [np.zeros((d, d), dtype=complex) for _ in range(d * d)]
    for m, p in enumerate(projs):
        slots[m * d if interleave else m] = p
    return slots


def test_eigenprojector_basis_pads_with_zeros():
    basis = eigenprojector_basis(np.diag([0.0, 1.0, 2.0]))
    assert len(basis) == 9
    assert np.abs(sum(basis) - np.eye(3)).max() < 1e-12
    for m in basis[3:]:
        assert np.abs(m).max() == 0.0


def test_near_orthogonal_distance_to_weight_diagonal():
    # frozen by direct computation; the Gram approaches diag(weights)
    # linearly in (1 - t)
    mic9 = near_orthogonal_family(padded_basis(2), sic_qubit(), 0.9)
    mic99 = near_orthogonal_family(padded_basis(2), sic_qubit(), 0.99)
    mic999 = near_orthogonal_family(padded_basis(2), sic_qubit(), 0.999)
    dists = [
        float(np.linalg.norm(m.gram - np.diag(m.weights())))
        for m in (mic9, mic99, mic999)
    ]
    assert dists[0] == pytest.approx(0.14091597365278238, abs=1e-12)
    assert dists[1] == pytest.approx(0.014962753172656438, abs=1e-12)
    assert dists[2] == pytest.approx(0.0015050014551652496, abs=1e-12)
    assert dists[2] < dists[1] < dists[0]


def test_near_orthogonal_weights_interpolate():
    t = 0.7
    base = sic_qubit()
    mic = near_orthogonal_family(padded_basis(2), base, t)
    expected = t * np.array([1.0, 1.0, 0.0, 0.0]) + (1 - t) * base.weights()
    assert np.abs(mic.weights() - expected).max() < 1e-12


def test_near_orthogonal_small_t_stays_close_to_base():
    base = sic_mic(3)
    mic = near_orthogonal_family(padded_basis(3), base, 1e-6)
    assert np.abs(mic.gram - base.gram).max() < 1e-5


def test_near_orthogonal_rejects_t_outside_unit_interval():
    with pytest.raises(ValueError):
        near_orthogonal_family(padded_basis(2), sic_qubit(), 1.5)
    with pytest.raises(ValueError):
        near_orthogonal_family(padded_basis(2), sic_qubit(), 0.0)


def test_near_orthogonal_degenerate_pairing_raises():
    # pairing every projector with an equal-shift orbit element collapses
    # the span before t reaches 0.99 in d = 3
    with pytest.raises(LinearlyDependent):
        near_orthogonal_family(padded_basis(3), sic_mic(3), 0.99)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_near_orthogonal_interleaved_pairing_survives(d):
    mic = near_orthogonal_family(padded_basis(d, interleave=True), sic_mic(d), 0.99)
    lim = np.zeros((d * d, d * d))
    for m in range(d):
        lim[m * d, m * d] = 1.0
    assert np.linalg.norm(mic.gram - lim) < 0.05


def test_mic_from_psd_basis_accepts_random_operators():
    rng = np.random.default_rng(5)
    ops = []
    for _ in range(4):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        ops.append(a @ a.conj().T)
    mic = mic_from_psd_basis(ops)
    assert mic.dim == 2
    assert np.abs(sum(mic.matrices()) - np.eye(2)).max() < 1e-10
