"""Normal forms of affine semigroups and binomial generators of toric surface ideals."""

from __future__ import annotations

from .errors import TorisolError
from .euclid import EuclidTrace, minimal_diophantine, successive_division
from .ideal import Binomial, GeneratorTable, generators_c4, redundancy_decomposition
from .oracle import cross_check, enumerate_kernel, minimality_probe
from .semigroup import SemigroupSpec, SqParams, SurfaceParams, build_sq, classify

__version__ = "0.1.0"

__all__ = [
    "Binomial",
    "EuclidTrace",
    "GeneratorTable",
    "SemigroupSpec",
    "SqParams",
    "SurfaceParams",
    "TorisolError",
    "build_sq",
    "classify",
    "cross_check",
    "enumerate_kernel",
    "generators_c4",
    "minimal_diophantine",
    "minimality_probe",
    "redundancy_decomposition",
    "successive_division",
]
