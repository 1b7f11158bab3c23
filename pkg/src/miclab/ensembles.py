"""Random MIC ensembles and Gram-spectra histogram studies.

Four sampling schemes, two generic and two group covariant:

* generic: d^2 independent Gaussian PSD matrices pushed through
  mic_from_psd_basis;
* generic-rank1: d^2 Haar-random rank-1 projectors, same construction;
* wh: a single Gaussian PSD matrix, trace normalized, used as the
  fiducial of a Weyl-Heisenberg orbit;
* wh-rank1: a Haar-random pure state as the orbit fiducial.

The covariant kinds are unbiased by construction, so their Gram spectra
pin the maximal eigenvalue at exactly 1/d; the generic kinds are biased
and satisfy only the lower bound.  spectra_study histograms the full
eigenvalue population over [0, 1/d] with deterministic per-sample
substreams, so results are reproducible bit for bit at any worker count.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, floor, sqrt

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .constructions import mic_from_psd_basis, wh_mic
from .errors import (
    DegenerateFiducial,
    LinearlyDependent,
    SamplingExhausted,
    WrongDimension,
)
from .povm import Mic

MAX_DRAW_ATTEMPTS = 100


class MicKind(Enum):
    """The four random MIC varieties."""

    GENERIC_PSD = "generic"
    GENERIC_RANK1 = "generic-rank1"
    WH_GENERIC = "wh"
    WH_RANK1 = "wh-rank1"


def haar_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vector distributed by the Haar measure on C^d.

    Independent standard complex Gaussian components, normalized.  The
    Gaussian vector's distribution is invariant under every unitary, so
    the normalized direction is Haar uniform on the sphere.
    """
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def gue_sample(d: int, rng: np.random.Generator) -> np.ndarray:
    """Gaussian Hermitian matrix, the M of gue_psd_sample.

    Convention: A has off-diagonal entries (x + iy)/sqrt(2) with x, y
    standard normal (so E|A_jk|^2 = 1) and real standard-normal diagonal
    entries; M = (A + A')/2.  Under this scaling E[tr M'M] = d(d+1)/2.
    The overall scale is irrelevant downstream: both MIC constructions
    that consume these samples are invariant under rho -> c rho.
    """
    a = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / sqrt(2.0)
    diag = rng.standard_normal(d)
    m = (a + a.conj().T) / 2.0
    np.fill_diagonal(m, diag)
    return m


def gue_psd_sample(d: int, rng: np.random.Generator) -> np.ndarray:
    """PSD matrix M'M built from a Gaussian Hermitian M."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    m = gue_sample(d, rng)
    p = m.conj().T @ m
    return (p + p.conj().T) / 2.0


def random_mic(kind: MicKind, d: int, rng: np.random.Generator,
               tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Draw one random MIC of the given kind.

    Degenerate draws (linearly dependent basis, or a fiducial with a
    vanishing displacement overlap) are discarded and redrawn from the
    same stream, up to MAX_DRAW_ATTEMPTS times.
    """
    kind = MicKind(kind)
    n = d * d
    for _ in range(MAX_DRAW_ATTEMPTS):
        try:
            if kind is MicKind.GENERIC_PSD:
                return mic_from_psd_basis([gue_psd_sample(d, rng) for _ in range(n)], tol)
            if kind is MicKind.GENERIC_RANK1:
                basis = [np.outer(v, v.conj())
                         for v in (haar_pure_state(d, rng) for _ in range(n))]
                return mic_from_psd_basis(basis, tol)
            if kind is MicKind.WH_GENERIC:
                p = gue_psd_sample(d, rng)
                return wh_mic(p / np.trace(p).real, tol=tol)
            v = haar_pure_state(d, rng)
            return wh_mic(np.outer(v, v.conj()), tol=tol)
        except (LinearlyDependent, DegenerateFiducial):
            continue
    raise SamplingExhausted(kind.value, d, MAX_DRAW_ATTEMPTS)


@dataclass(frozen=True, eq=False)
class SpectraHistogram:
    """Binned population of Gram eigenvalues over [0, 1/d].

    Bins are [k w, (k+1) w) for bin width w, except the last, which is
    closed at 1/d.  Eigenvalues above 1/d (the biased kinds exceed it;
    for unbiased kinds only by rounding) are counted in the last bin so
    the total count is always n_samples * d^2.
    """

    kind: MicKind
    d: int
    bin_width: Fraction
    counts: np.ndarray
    n_samples: int
    seed: int

    def __post_init__(self):
        if self.bin_width <= 0:
            raise ValueError("bin_width must be positive")
        counts = np.ascontiguousarray(self.counts, dtype=np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        if counts.min() < 0:
            raise ValueError("negative bin count")
        total = int(counts.sum())
        if total != self.n_samples * self.d ** 2:
            raise ValueError(
                f"count total {total} != n_samples * d^2 = {self.n_samples * self.d ** 2}")

    def edges(self) -> list:
        """Exact rational bin edges, length len(counts) + 1."""
        return [k * self.bin_width for k in range(len(self.counts) + 1)]


def _as_bin_width(bin_width, d: int) -> Fraction:
    # exact rationals only: floats are snapped to a nearby small fraction
    # and then required to tile (0, 1/d] in whole bins
    if isinstance(bin_width, float):
        w = Fraction(bin_width).limit_denominator(10 ** 6)
    else:
        w = Fraction(bin_width)
    if w <= 0:
        raise ValueError(f"bin width must be positive, got {bin_width}")
    n_bins = Fraction(1, d) / w
    if n_bins.denominator != 1:
        raise ValueError(f"bin width {w} does not divide (0, 1/{d}] into whole bins")
    return w


def _count_chunk(kind_value: str, d: int, start: int, stop: int, seed: int,
                 n_bins: int) -> np.ndarray:
    kind = MicKind(kind_value)
    scale = n_bins * d  # idx = floor(eig / w) with w = 1/(n_bins d)
    counts = np.zeros(n_bins, dtype=np.int64)
    for i in range(start, stop):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        try:
            mic = random_mic(kind, d, rng)
        except SamplingExhausted as exc:
            raise SamplingExhausted(exc.kind, exc.d, exc.attempts, sample_index=i)
        eigs = np.linalg.eigvalsh(mic.gram)
        idx = np.floor(eigs * scale).astype(np.int64)
        np.clip(idx, 0, n_bins - 1, out=idx)
        np.add.at(counts, idx, 1)
    return counts


def spectra_study(kind: MicKind, d: int, n_samples: int, bin_width,
                  seed: int, workers: int = 1) -> SpectraHistogram:
    """Histogram the Gram eigenvalues of n_samples random MICs.

    Sample i draws from a substream seeded by (seed, i), so the result
    is a pure function of (kind, d, n_samples, bin_width, seed) and is
    byte-identical at any worker count.  bin_width must be an exact
    rational (Fraction or a string like "1/198") dividing (0, 1/d] into
    whole bins; floats are snapped to the nearest small fraction first.
    """
    kind = MicKind(kind)
    if n_samples < 1:
        raise ValueError(f"n_samples must be at least 1, got {n_samples}")
    w = _as_bin_width(bin_width, d)
    n_bins = int(Fraction(1, d) / w)
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    if workers == 1:
        counts = _count_chunk(kind.value, d, 0, n_samples, seed, n_bins)
    else:
        step = ceil(n_samples / workers)
        chunks = [(kind.value, d, lo, min(lo + step, n_samples), seed, n_bins)
                  for lo in range(0, n_samples, step)]
        with multiprocessing.Pool(processes=len(chunks)) as pool:
            parts = pool.starmap(_count_chunk, chunks)
        counts = np.sum(parts, axis=0, dtype=np.int64)
    return SpectraHistogram(kind=kind, d=d, bin_width=w, counts=counts,
                            n_samples=n_samples, seed=seed)


def plateau_metric(h: SpectraHistogram) -> float:
    """Count ratio across the 1/12 edge of a d = 3 spectrum histogram.

    Returns counts in the last whole bin below 1/12 divided by counts in
    the first whole bin at or above it.  The covariant rank-1 ensemble
    piles its non-maximal eigenvalues into a plateau that ends at 1/12
    (the average of the eight non-maximal eigenvalues, exact for a SIC),
    so a sharp edge shows up as a ratio well above 1.
    """
    if h.d != 3:
        raise WrongDimension(f"plateau metric is defined for d=3 only, got d={h.d}")
    q = Fraction(1, 12) / h.bin_width
    k_below = floor(q) - 1
    k_above = ceil(q)
    if k_below < 0 or k_above >= len(h.counts):
        raise ValueError(f"bin width {h.bin_width} leaves no whole bin on one side of 1/12")
    num = float(h.counts[k_below])
    den = float(h.counts[k_above])
    if den == 0.0:
        return float("inf")
    return num / den
