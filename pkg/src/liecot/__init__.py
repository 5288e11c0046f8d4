"""Exact computations on finite-dimensional real Lie algebras and their cotangent
doubles T*g: derivations, prederivations, cohomology, invariant metrics, plus
floating-point geometry of Aff(R) and its double.
"""
from .algebra import LieAlgebra, catalog, cotangent
from .errors import InputError, LiecotError, PreconditionError

__version__ = "0.1.0"

__all__ = ["LieAlgebra", "catalog", "cotangent", "LiecotError", "InputError", "PreconditionError"]
