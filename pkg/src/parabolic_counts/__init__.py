"""Counting conjugacy classes under parabolic subgroups of GL_n(F_q) and SL_n(F_q).

Each count is computed twice: by exhaustive enumeration over explicit
matrices, and by a formula assembled from type fibers, Green polynomials
and Deligne-Lusztig character values.
"""

__version__ = "0.1.0"

from .counting import CountReport, TypeFiber, k_group, k_lie, k_nil
from .finite_field import CyclotomicInt, Field, FieldElement, Poly, additive_char, field_make, gf, poly_factor
from .green import dl_value, green_table, hall_littlewood_transition, steinberg_value
from .matrices import BudgetExceeded, GroupSpec, ParabolicSpec
from .porc import PorcFit, SweepSeries, fit
from .qpoly import QPolynomial
from .weyl import InvariantViolation, TypeLabel

__all__ = [
    "BudgetExceeded", "CountReport", "CyclotomicInt", "Field", "FieldElement", "GroupSpec",
    "InvariantViolation", "ParabolicSpec", "Poly", "PorcFit", "QPolynomial", "SweepSeries",
    "TypeFiber", "TypeLabel", "additive_char", "dl_value", "field_make", "fit", "gf",
    "green_table", "hall_littlewood_transition", "k_group", "k_lie", "k_nil", "poly_factor",
    "steinberg_value",
]
