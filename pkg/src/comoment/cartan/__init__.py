"""Cartan calculus on two exact models: polynomial forms on R^m and invariant forms."""

from .base import (
    CartanBackend,
    Form,
    NondegeneracyVerdict,
    PotentialResult,
    contract,
    d,
    de_rham_dims,
    evaluate_at,
    find_potential,
    lie_derivative,
    nondegeneracy_check,
    wedge,
)
from .euclidean import EuclideanSpace, PolyForm, PolyVectorField
from .invariant import AlgForm, AlgVectorField, InvariantModel

__all__ = [
    "AlgForm", "AlgVectorField", "CartanBackend", "EuclideanSpace", "Form", "InvariantModel",
    "NondegeneracyVerdict", "PolyForm", "PolyVectorField", "PotentialResult", "contract", "d",
    "de_rham_dims", "evaluate_at", "find_potential", "lie_derivative", "nondegeneracy_check", "wedge",
]
