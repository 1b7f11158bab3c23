"""Random MIC samplers and the Gram-spectra histogram study."""

from fractions import Fraction

import numpy as np
import pytest

from miclab.ensembles import (
    MicKind,
    SpectraHistogram,
    gue_psd_sample,
    gue_sample,
    haar_pure_state,
    plateau_metric,
    random_mic,
    spectra_study,
)
from miclab.errors import WrongDimension
from miclab.povm import is_unbiased, rank1_mic_check


def test_haar_state_is_normalized():
    rng = np.random.default_rng(0)
    for d in (2, 3, 7):
        v = haar_pure_state(d, rng)
        assert abs(np.linalg.norm(v) - 1.0) < 1e-12


def test_haar_first_component_mean():
    # |<e1|psi>|^2 is Beta(1, d-1); its mean is 1/d
    rng = np.random.default_rng(1)
    d, n = 3, 20000
    vals = np.array([abs(haar_pure_state(d, rng)[0]) ** 2 for _ in range(n)])
    sigma = np.sqrt((d - 1) / (d * d * (d + 1)) / n)
    assert abs(vals.mean() - 1 / d) < 4 * sigma


def test_gue_sample_hermitian_psd_product():
    rng = np.random.default_rng(2)
    m = gue_sample(4, rng)
    assert np.abs(m - m.conj().T).max() < 1e-14
    p = gue_psd_sample(4, rng)
    assert np.abs(p - p.conj().T).max() < 1e-14
    assert np.linalg.eigvalsh(p)[0] > -1e-12


def test_gue_second_moment_convention():
    # E[tr M^dagger M] = d(d+1)/2 with unit-variance entries
    rng = np.random.default_rng(3)
    d, n = 3, 20000
    total = sum(np.trace(gue_psd_sample(d, rng)).real for _ in range(n)) / n
    assert abs(total - d * (d + 1) / 2) / (d * (d + 1) / 2) < 0.05


@pytest.mark.parametrize("kind", list(MicKind))
def test_random_mic_kinds_are_valid(kind):
    rng = np.random.default_rng(4)
    for d in (2, 3):
        mic = random_mic(kind, d, rng)
        assert mic.dim == d
        if kind in (MicKind.WH_GENERIC, MicKind.WH_RANK1):
            assert is_unbiased(mic)
            assert abs(np.linalg.eigvalsh(mic.gram)[-1] - 1 / d) < 1e-9
        else:
            assert not is_unbiased(mic)


def test_random_rank1_mic_passes_rank1_criterion():
    rng = np.random.default_rng(5)
    mic = random_mic(MicKind.GENERIC_RANK1, 3, rng)
    vecs, weights = [], []
    for m in mic.matrices():
        w, v = np.linalg.eigh(m)
        vecs.append(v[:, -1])
        weights.append(w[-1])
    is_povm, is_mic = rank1_mic_check(vecs, weights)
    assert is_povm and is_mic


# --------------------------------------------------------------- histogram

def test_histogram_counts_preserved_and_edges():
    h = spectra_study(MicKind.GENERIC_PSD, 2, 50, Fraction(1, 200), seed=0)
    assert h.counts.sum() == 50 * 4
    assert h.counts.dtype == np.int64
    edges = h.edges()
    assert edges[0] == 0
    assert edges[-1] == Fraction(1, 2)
    assert len(edges) == len(h.counts) + 1


def test_histogram_validation():
    with pytest.raises(ValueError):
        SpectraHistogram(kind=MicKind.GENERIC_PSD, d=2, bin_width=Fraction(1, 100),
                         counts=np.ones(50, dtype=np.int64), n_samples=2, seed=0)


def test_bin_width_must_divide_range():
    with pytest.raises(ValueError):
        spectra_study(MicKind.GENERIC_PSD, 3, 5, Fraction(1, 200), seed=0)


def test_bin_width_accepts_float_and_string_fraction():
    h1 = spectra_study(MicKind.WH_GENERIC, 2, 20, Fraction(1, 200), seed=3)
    h2 = spectra_study(MicKind.WH_GENERIC, 2, 20, 1 / 200, seed=3)
    assert np.array_equal(h1.counts, h2.counts)


def test_unbiased_kind_tops_the_last_bin():
    n = 40
    h = spectra_study(MicKind.WH_RANK1, 2, n, Fraction(1, 200), seed=1)
    # one maximal eigenvalue 1/d per sample, closed into the last bin
    assert h.counts[-1] >= n


def test_determinism_across_worker_counts():
    kwargs = dict(n_samples=60, bin_width=Fraction(1, 198), seed=21)
    h1 = spectra_study(MicKind.WH_RANK1, 3, workers=1, **kwargs)
    h4 = spectra_study(MicKind.WH_RANK1, 3, workers=4, **kwargs)
    assert np.array_equal(h1.counts, h4.counts)
    assert h1.seed == h4.seed == 21


def test_determinism_across_runs():
    h1 = spectra_study(MicKind.GENERIC_RANK1, 2, 30, Fraction(1, 200), seed=9)
    h2 = spectra_study(MicKind.GENERIC_RANK1, 2, 30, Fraction(1, 200), seed=9)
    assert np.array_equal(h1.counts, h2.counts)


# ----------------------------------------------------------------- plateau

def test_plateau_metric_uniform_histogram_is_one():
    counts = np.full(66, 12, dtype=np.int64)
    h = SpectraHistogram(kind=MicKind.WH_RANK1, d=3, bin_width=Fraction(1, 198),
                         counts=counts, n_samples=88, seed=0)
    assert plateau_metric(h) == 1.0


def test_plateau_metric_requires_d3():
    h = spectra_study(MicKind.WH_RANK1, 2, 10, Fraction(1, 200), seed=2)
    with pytest.raises(WrongDimension):
        plateau_metric(h)


def test_plateau_metric_empty_right_bin_is_infinite():
    counts = np.zeros(66, dtype=np.int64)
    counts[10] = 9  # all mass far left of the 1/12 edge
    h = SpectraHistogram(kind=MicKind.WH_RANK1, d=3, bin_width=Fraction(1, 198),
                         counts=counts, n_samples=1, seed=0)
    assert plateau_metric(h) == float("inf")
