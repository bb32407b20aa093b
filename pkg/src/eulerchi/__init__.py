"""Exact Eulerian numbers, Euler characteristics of complete intersections in
abelian varieties, and the wedge-power Diophantine system they feed."""
from __future__ import annotations

from .chi import (
    ChiSequence,
    DegreeProfile,
    IntegralityError,
    IntersectionProfile,
    chi_from_profile,
    chi_same_class,
    chi_via_recurrence,
    numerical_condition,
)
from .eulerian import (
    eulerian_row,
    generalized_eulerian,
    generalized_eulerian_row,
)

__version__ = "0.1.0"

__all__ = [
    "ChiSequence",
    "DegreeProfile",
    "IntegralityError",
    "IntersectionProfile",
    "chi_from_profile",
    "chi_same_class",
    "chi_via_recurrence",
    "eulerian_row",
    "generalized_eulerian",
    "generalized_eulerian_row",
    "numerical_condition",
]
