"""Minimal informationally complete POVM construction and analysis."""

from .config import DEFAULT_TOL, ToleranceConfig, tolerances_from_env
from .constructions import (
    appleby_mic,
    equiangular_mic,
    example_seven_orthogonal,
    near_orthogonal_family,
    orthocross_mic,
    sic_mic,
    sic_qubit,
    tensorhedron_mic,
    wh_mic,
)
from .ensembles import MicKind, SpectraHistogram, plateau_metric, random_mic, spectra_study
from .errors import MicLabError
from .povm import (
    DualBasis,
    Effect,
    Mic,
    Povm,
    born_probabilities,
    dual_basis,
    gram,
    is_unbiased,
    mic_from_matrices,
    reconstruct_state,
    validate_mic,
    validate_povm,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DualBasis",
    "Effect",
    "Mic",
    "MicKind",
    "MicLabError",
    "Povm",
    "SpectraHistogram",
    "ToleranceConfig",
    "appleby_mic",
    "born_probabilities",
    "dual_basis",
    "equiangular_mic",
    "example_seven_orthogonal",
    "gram",
    "is_unbiased",
    "mic_from_matrices",
    "near_orthogonal_family",
    "orthocross_mic",
    "plateau_metric",
    "random_mic",
    "reconstruct_state",
    "sic_mic",
    "sic_qubit",
    "spectra_study",
    "tensorhedron_mic",
    "tolerances_from_env",
    "validate_mic",
    "validate_povm",
    "wh_mic",
]
