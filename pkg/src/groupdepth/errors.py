"""Exception hierarchy.

Two broad classes matter to callers: domain errors (the request itself is
invalid or outside what the library models) and resource errors (a cap or
search budget ran out before an answer was reached). The CLI maps them to
distinct exit codes.
"""


class GroupDepthError(Exception):
    """Base class for all library errors."""


class DomainError(GroupDepthError, ValueError):
    """The request is invalid for the given input."""


class CapExceeded(GroupDepthError):
    """A configured cap or search budget was exhausted."""


class DegreeMismatch(DomainError):
    """Permutations of different degrees were combined."""


class NotPrime(DomainError):
    """A parameter that must be prime is not."""


class NotSimple(DomainError):
    """The operation is defined for simple groups only."""


class UnsupportedField(DomainError):
    """No finite field of that size is available."""


class UnknownName(DomainError):
    """A name lookup (sporadic group, Lie type) failed."""


class IncompleteFactorization(GroupDepthError):
    """An exact answer needs a factorization the budget could not finish."""

    def __init__(self, value: int, message: str | None = None):
        self.value = value
        super().__init__(message or f"factorization of {value} is incomplete")


class OrderCapExceeded(CapExceeded):
    """Group closure grew past the configured order cap."""


class LatticeCapExceeded(CapExceeded):
    """Subgroup enumeration exceeded the configured lattice caps."""


class NotFoundWithinLimit(CapExceeded):
    """A bounded search ended without finding a witness."""


class GoldbachSearchExhausted(GroupDepthError):
    """No three-prime decomposition was found; this would be remarkable."""
