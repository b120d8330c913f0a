"""Nonclassical Zariski covers: exact operator algebras, states and metric limits."""

from .algebra import Algebra, AlgebraError, OpElement
from .scalars import AFFINE, TORUS, Cyclotomic, Scalar
from .structures import StarParams

__all__ = [
    "AFFINE",
    "TORUS",
    "Algebra",
    "AlgebraError",
    "Cyclotomic",
    "OpElement",
    "Scalar",
    "StarParams",
]

__version__ = "0.1.0"
