"""Absolute PPT classification of bipartite states from their eigenvalues."""

from .criteria import Report, Verdict, VerdictKind, classify
from .estimator import SpectralPPTClassifier, check_spectra
from .exceptions import AbsSepError, InternalInconsistency, ValidationError
from .linalg import Tolerances
from .matricization import OrderingPair, canonical_pairs, compatible_pair_for, sample_pairs
from .spectrum import Dims, Spectrum, make_spectrum, max_mixed, purity

__all__ = [
    "AbsSepError",
    "Dims",
    "InternalInconsistency",
    "OrderingPair",
    "Report",
    "Spectrum",
    "SpectralPPTClassifier",
    "Tolerances",
    "ValidationError",
    "Verdict",
    "VerdictKind",
    "canonical_pairs",
    "check_spectra",
    "classify",
    "compatible_pair_for",
    "make_spectrum",
    "max_mixed",
    "purity",
    "sample_pairs",
]
