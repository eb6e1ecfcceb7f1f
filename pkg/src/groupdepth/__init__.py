"""Depth and length of subgroup chains in finite groups.

Exact chain statistics for small groups via exhaustive subgroup lattice
enumeration, plus closed-form depth values, classification predicates,
explicit chain constructions, and asymptotic bounds for the standard
infinite families (alternating, linear, unitary, Suzuki, Ree, sporadic).
"""

from .errors import (
    CapExceeded,
    DomainError,
    GroupDepthError,
    IncompleteFactorization,
    LatticeCapExceeded,
    NotFoundWithinLimit,
    OrderCapExceeded,
)
from .families import (
    FamilyDescriptor,
    alternating,
    cyclic,
    dihedral,
    psl2,
    symmetric,
)
from .lattice import SubgroupLattice, enumerate_subgroups
from .numtheory import FactoredInt, GoldbachTriple, factorize, is_prime, ternary_goldbach
from .permcore import FiniteGroup, Permutation, close, from_cycles

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DomainError",
    "FactoredInt",
    "FamilyDescriptor",
    "FiniteGroup",
    "GoldbachTriple",
    "GroupDepthError",
    "IncompleteFactorization",
    "LatticeCapExceeded",
    "NotFoundWithinLimit",
    "OrderCapExceeded",
    "Permutation",
    "SubgroupLattice",
    "alternating",
    "close",
    "cyclic",
    "dihedral",
    "enumerate_subgroups",
    "factorize",
    "from_cycles",
    "is_prime",
    "psl2",
    "symmetric",
    "ternary_goldbach",
    "__version__",
]
