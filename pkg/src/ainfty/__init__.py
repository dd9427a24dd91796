"""Exact engine for curved A-infinity algebras over Novikov-type rings."""

from .coeff import Monomial, Poly, RingElement, RingSpec
from .graded import Element, GradedBasis
from .ainfty import AInftyAlgebra, MonoidElement

__all__ = [
    "AInftyAlgebra",
    "Element",
    "GradedBasis",
    "Monomial",
    "MonoidElement",
    "Poly",
    "RingElement",
    "RingSpec",
]

__version__ = "0.1.0"
