"""Exact desk-scale computations around random Cayley graphs and small sumsets."""

from .errors import CayleySumError, InvalidInput, PreconditionViolation, TooLarge
from .groups import GroupSpec, abelian_groups_of_order, cyclic, make_group, parse_group
from .sumset import PointSet, diff_set, hat_plus, integer_set, point_set

__version__ = "0.1.0"

__all__ = [
    "CayleySumError",
    "GroupSpec",
    "InvalidInput",
    "PointSet",
    "PreconditionViolation",
    "TooLarge",
    "__version__",
    "abelian_groups_of_order",
    "cyclic",
    "diff_set",
    "hat_plus",
    "integer_set",
    "make_group",
    "parse_group",
    "point_set",
]
