"""Exact computations with metric groups, Lagrangian correspondences,
module category classes over pointed fusion categories, and the group
cohomology driving their extension theory."""

__version__ = "0.1.0"

from .abelian import FinAbGroup, Homomorphism, Subgroup
from .errors import (
    BudgetExceeded,
    CapExceeded,
    CocycleViolation,
    InvalidData,
    NonCentralElement,
    NotInvariant,
    NotInvertible,
    UnsupportedOddOnly,
)

__all__ = [
    "FinAbGroup",
    "Homomorphism",
    "Subgroup",
    "BudgetExceeded",
    "CapExceeded",
    "CocycleViolation",
    "InvalidData",
    "NonCentralElement",
    "NotInvariant",
    "NotInvertible",
    "UnsupportedOddOnly",
    "__version__",
]
