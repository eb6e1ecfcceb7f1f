"""Exact depth values, the depth-three classification, and depth bounds.

Everything here is arithmetic on family descriptors: no permutation groups
are built. Exact values exist for supersolvable groups (number of prime
factors of the order), two-dimensional projective groups over most fields,
Suzuki groups, sporadic groups, and small alternating degrees. Where only
an interval or a bound is known the result says so instead of guessing,
and a computation that dies inside an integer factorization reports the
integer it got stuck on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .errors import DomainError, IncompleteFactorization, NotPrime, NotSimple
from .families import (
    KIND_ALTERNATING,
    KIND_CYCLIC,
    KIND_DIHEDRAL,
    KIND_LIE,
    KIND_PSL,
    KIND_REE,
    KIND_SPORADIC,
    KIND_SUZUKI,
    KIND_SYMMETRIC,
    FamilyDescriptor,
    alternating_descriptor,
    descriptor_rank_and_weight,
    normalize_sporadic,
    psl_descriptor,
    split_prime_power,
)
from .numtheory import FactoredInt, big_omega, factorize, is_prime, prime_divisors

METHOD_FORMULA = "Formula"
METHOD_TABLE = "TableLookup"
METHOD_BOUND = "Bound"
METHOD_BRUTE_FORCE = "BruteForce"

CASE_GENERIC = "generic"
CASE_EVEN_CHAR_RANK_ONE = "case_i"
CASE_EVEN_CHAR_UNITARY = "case_ii"


@dataclass(frozen=True)
class DepthResult:
    """Outcome of a depth computation.

    value is an exact integer, an inclusive (low, high) interval, or None
    when the answer is unknown. method records how the number was obtained
    and rule names the specific argument. blocked_on is set when the only
    obstacle was an integer that would not factor within budget.
    """

    value: int | tuple[int, int] | None
    method: str
    rule: str
    blocked_on: int | None = None

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, int)

    @property
    def is_interval(self) -> bool:
        return isinstance(self.value, tuple)

    @property
    def is_unknown(self) -> bool:
        return self.value is None

    def low(self) -> int | None:
        if self.is_exact:
            return self.value
        if self.is_interval:
            return self.value[0]
        return None

    def high(self) -> int | None:
        if self.is_exact:
            return self.value
        if self.is_interval:
            return self.value[1]
        return None

    def to_dict(self) -> dict:
        if self.is_interval:
            rendered = [self.value[0], self.value[1]]
        elif self.is_unknown:
            rendered = "Unknown"
        else:
            rendered = self.value
        out = {"value": rendered, "method": self.method, "rule": self.rule}
        if self.blocked_on is not None:
            out["blocked_on"] = str(self.blocked_on)
        return out


def _exact(value: int, method: str, rule: str) -> DepthResult:
    return DepthResult(value, method, rule)


def _interval(lo: int, hi: int, rule: str) -> DepthResult:
    if hi < lo:
        raise DomainError(f"empty depth interval [{lo}, {hi}] from rule {rule}")
    if lo == hi:
        return DepthResult(lo, METHOD_BOUND, rule)
    return DepthResult((lo, hi), METHOD_BOUND, rule)


def _unknown(rule: str, blocked_on: int | None = None) -> DepthResult:
    return DepthResult(None, METHOD_FORMULA, rule, blocked_on)


# ---------------------------------------------------------------------------
# Supersolvable groups: every maximal chain refines one prime at a time.


def depth_supersolvable(order: int | FactoredInt) -> DepthResult:
    """Depth (= length) of any supersolvable group of the given order."""
    f = factorize(order) if isinstance(order, int) else order
    omega = f.omega()
    if omega is None:
        raise IncompleteFactorization(f.cofactor())
    return _exact(omega, METHOD_FORMULA, "prime-step-chains")


# ---------------------------------------------------------------------------
# Two-dimensional projective groups.


def depth_l2_prime(p: int) -> DepthResult:
    """Depth of L2(p) for an odd prime p. Always exact."""
    if not is_prime(p) or p == 2:
        raise NotPrime(f"need an odd prime, got {p}")
    if p == 3:
        # Degenerate: the group is A4, one chain through C3.
        return _exact(2, METHOD_FORMULA, "solvable-floor")
    if is_prime((p - 1) // 2) or is_prime((p + 1) // 2):
        return _exact(3, METHOD_FORMULA, "dihedral-route")
    if p % 40 in (3, 13, 27, 37):
        # Exactly the residues where a twelve-element point stabilizer
        # sits maximally, giving a three step chain through it.
        return _exact(3, METHOD_FORMULA, "maximal-a4-route")
    return _exact(4, METHOD_FORMULA, "depth-four-complement")


def depth_l2_pk(p: int, k: int) -> DepthResult:
    """Depth of L2(p^k).

    Exact for p = 2 (any k >= 2), and for odd p with odd k. The odd p,
    even k case is open and comes back as an unknown result rather than
    a guess; q = 9 is the lone exception, settled by brute force.
    """
    if not is_prime(p):
        raise NotPrime(f"need a prime characteristic, got {p}")
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if (p, k) == (2, 1):
        raise NotSimple("L2(2) is the symmetric group on 3 points")
    if p == 2:
        if k % 2:
            return _l2_even_char_odd_exponent(k)
        return _l2_even_char_even_exponent(k)
    if k == 1:
        return depth_l2_prime(p)
    if k % 2 == 0:
        if p == 3 and k == 2:
            # A6 by another name; settled by lattice enumeration.
            return _exact(4, METHOD_BRUTE_FORCE, "small-lattice")
        return _unknown("odd-char-even-exponent-open")
    base = depth_l2_prime(p)
    omega_k = big_omega(k)
    if omega_k is None:
        return _unknown("subfield-tower", blocked_on=k)
    return _exact(
        omega_k + base.value, METHOD_FORMULA, "subfield-tower-plus-" + base.rule
    )


def _l2_even_char_odd_exponent(k: int) -> DepthResult:
    # k odd, >= 3: descend through the subfield tower, then one torus
    # normalizer step and a cyclic tail of whichever torus is shortest.
    omega_k = big_omega(k)
    if omega_k is None:
        return _unknown("subfield-tower", blocked_on=k)
    best, blocked = _min_omega_over([
        2**r + s for r in prime_divisors(k) for s in (-1, 1)
    ])
    if best is None:
        return _unknown("torus-tail", blocked_on=blocked)
    return _exact(omega_k + 1 + best, METHOD_FORMULA, "subfield-torus-tail")


def _l2_even_char_even_exponent(k: int) -> DepthResult:
    # k = 2^a * b with b odd, a >= 1. The chain drops to the subfield of
    # 2-power degree first; the best tail is searched over those fields.
    omega_k = big_omega(k)
    if omega_k is None:
        return _unknown("subfield-tower", blocked_on=k)
    a = (k & -k).bit_length() - 1
    candidates = []
    for c in range(1, a + 1):
        for s in (-1, 1):
            m = big_omega(2 ** (2**c) + s)
            if m is None:
                return _unknown("torus-tail", blocked_on=2 ** (2**c) + s)
            candidates.append(m - c)
    return _exact(
        omega_k + 2 + min(candidates), METHOD_FORMULA, "two-power-subfield-tail"
    )


def depth_psl2(q: int) -> DepthResult:
    """Depth of L2(q), dispatching on the shape of q = p^k."""
    p, k = split_prime_power(q)
    return depth_l2_pk(p, k)


# ---------------------------------------------------------------------------
# Suzuki groups.


def depth_suzuki(k: int) -> DepthResult:
    """Depth of the Suzuki group over the field of size 2^k, k odd >= 3.

    Exact: subfield tower, one normalizer step, and the best cyclic tail
    among the three tori (the q - 1 torus embeds without the extra
    normalizer step; the two others need one).
    """
    if k < 3 or k % 2 == 0:
        raise DomainError(f"need an odd exponent k >= 3, got {k}")
    omega_k = big_omega(k)
    if omega_k is None:
        return _unknown("subfield-tower", blocked_on=k)
    tails = []
    for r in prime_divisors(k):
        half = 2 ** ((r + 1) // 2)
        for n, extra in ((2**r - 1, 0), (2**r - half + 1, 1), (2**r + half + 1, 1)):
            m = big_omega(n)
            if m is None:
                return _unknown("torus-tail", blocked_on=n)
            tails.append(m + extra)
    return _exact(omega_k + 1 + min(tails), METHOD_FORMULA, "subfield-torus-tail")


def _min_omega_over(values: list[int]) -> tuple[int | None, int | None]:
    """(min omega, None) over the values, or (None, first stuck integer)."""
    best = None
    for n in values:
        m = big_omega(n)
        if m is None:
            return None, n
        if best is None or m < best:
            best = m
    return best, None


# ---------------------------------------------------------------------------
# Sporadic groups.


def _load_sporadic_depths() -> dict[str, int]:
    text = resources.files("groupdepth.data").joinpath("sporadic_depths.json").read_text()
    return {str(k): int(v) for k, v in json.loads(text).items()}


_SPORADIC_DEPTHS: dict[str, int] | None = None


def sporadic_depth_table() -> dict[str, int]:
    global _SPORADIC_DEPTHS
    if _SPORADIC_DEPTHS is None:
        _SPORADIC_DEPTHS = _load_sporadic_depths()
    return dict(_SPORADIC_DEPTHS)


def depth_sporadic(name: str) -> DepthResult:
    """Depth of a sporadic simple group, by table."""
    return _exact(
        sporadic_depth_table()[normalize_sporadic(name)], METHOD_TABLE, "sporadic-table"
    )


# ---------------------------------------------------------------------------
# The depth-three classification.

# Non-isomorphic-looking names for the same small groups; resolved before
# any predicate or formula runs.
_PSL_ALIASES: dict[tuple[int, int, int], FamilyDescriptor] = {
    (2, 4, 1): alternating_descriptor(5),
    (2, 4, -1): alternating_descriptor(5),
    (2, 5, 1): alternating_descriptor(5),
    (2, 5, -1): alternating_descriptor(5),
    (2, 9, 1): alternating_descriptor(6),
    (2, 9, -1): alternating_descriptor(6),
    (3, 2, 1): psl_descriptor(2, 7),
}


def canonical_descriptor(d: FamilyDescriptor) -> FamilyDescriptor:
    """Resolve accidental small isomorphisms and Lie labels of type A."""
    if d.kind == KIND_PSL:
        return _PSL_ALIASES.get((d.n, d.q, d.epsilon), d)
    if d.kind == KIND_LIE and d.name.startswith("A"):
        return canonical_descriptor(psl_descriptor(int(d.name[1:]) + 1, d.q))
    return d


def _require_simple_psl(n: int, q: int, epsilon: int) -> None:
    if n == 2 and q < 4:
        raise NotSimple(f"L2({q}) is solvable or symmetric, not simple")
    if (n, q, epsilon) == (3, 2, -1):
        raise NotSimple("U3(2) is solvable")


def is_depth3(d: FamilyDescriptor) -> bool:
    """Whether the simple group described has depth exactly three."""
    d = canonical_descriptor(d)
    if d.kind == KIND_ALTERNATING:
        if d.n < 5:
            raise NotSimple(f"A{d.n} is not a non-abelian simple group")
        return is_prime(d.n) and is_prime((d.n - 1) // 2) and d.n not in (7, 11, 23)
    if d.kind == KIND_PSL:
        _require_simple_psl(d.n, d.q, d.epsilon)
        if d.n == 2:
            return _l2_is_depth3(d.q)
        return _linear_unitary_is_depth3(d.n, d.q, d.epsilon)
    if d.kind == KIND_SUZUKI:
        return is_prime(d.q - 1)
    if d.kind == KIND_REE:
        return False
    if d.kind == KIND_SPORADIC:
        return d.name in ("M23", "B")
    if d.kind == KIND_LIE:
        # Type A was canonicalized away; no other Lie type qualifies.
        return False
    raise NotSimple(f"{d.describe()} is not a simple group")


def _l2_is_depth3(q: int) -> bool:
    p, k = split_prime_power(q)
    half = math.gcd(2, q - 1)
    if q != 9 and (is_prime((q + 1) // half) or is_prime((q - 1) // half)):
        return True
    if k == 1 and q % 40 in (3, 13, 27, 37):
        return True
    return p == 3 and k >= 3 and is_prime(k)


def _linear_unitary_is_depth3(n: int, q: int, epsilon: int) -> bool:
    if (n, q, epsilon) in ((3, 4, 1), (3, 3, -1), (3, 5, -1), (5, 2, -1)):
        return False
    if not is_prime(n):
        return False
    # For odd prime n the division is exact.
    denom = (q - epsilon) * math.gcd(n, q - epsilon)
    numer = q**n - epsilon
    return numer % denom == 0 and is_prime(numer // denom)


# ---------------------------------------------------------------------------
# Formula dispatch for whole descriptors.

# Exact depths for small alternating degrees. Degrees 5 to 7 agree with
# the lattice enumeration; the classification puts 6 and 7 above three,
# and four step chains through L2(5) and L2(7) close the gap.
_ALTERNATING_SMALL = {1: 0, 2: 0, 3: 1, 4: 2, 5: 3, 6: 4, 7: 4}

ALTERNATING_CHAIN_CAP = 23  # worst case over the partition route


def depth_formula(d: FamilyDescriptor) -> DepthResult:
    """Best symbolic answer for the descriptor: exact where a formula or
    table applies, an interval where only bounds are known."""
    d = canonical_descriptor(d)
    kind = d.kind
    if kind in (KIND_CYCLIC, KIND_DIHEDRAL):
        return depth_supersolvable(d.n)
    if kind == KIND_SYMMETRIC:
        raise DomainError(
            f"no symbolic depth for S{d.n}; use the lattice if it is small"
        )
    if kind == KIND_ALTERNATING:
        return _alternating_formula(d.n)
    if kind == KIND_PSL:
        if d.n == 2:
            _require_simple_psl(d.n, d.q, d.epsilon)
            return depth_psl2(d.q)
        return _linear_unitary_formula(d)
    if kind == KIND_SUZUKI:
        return depth_suzuki(d.field_exponent)
    if kind == KIND_SPORADIC:
        return depth_sporadic(d.name)
    if kind in (KIND_REE, KIND_LIE):
        if is_depth3(d):
            return _exact(3, METHOD_FORMULA, "three-step-classification")
        report = lie_depth_bound(d)
        if report.bound_value is None:
            return _unknown("bounded-window", blocked_on=report.blocked_on)
        return _interval(4, report.bound_value, "bounded-window")
    raise DomainError(f"no symbolic depth for kind {kind}")


def _alternating_formula(n: int) -> DepthResult:
    if n in _ALTERNATING_SMALL:
        return _exact(_ALTERNATING_SMALL[n], METHOD_TABLE, "small-degree-table")
    if is_depth3(alternating_descriptor(n)):
        return _exact(3, METHOD_FORMULA, "three-step-classification")
    if n <= 10:
        return _interval(4, 5, "small-degree-window")
    return _interval(4, ALTERNATING_CHAIN_CAP, "partition-chain-window")


def _linear_unitary_formula(d: FamilyDescriptor) -> DepthResult:
    _require_simple_psl(d.n, d.q, d.epsilon)
    if is_depth3(d):
        return _exact(3, METHOD_FORMULA, "three-step-classification")
    report = lie_depth_bound(d)
    if report.bound_value is None:
        return _unknown("bounded-window", blocked_on=report.blocked_on)
    return _interval(4, report.bound_value, "bounded-window")


# ---------------------------------------------------------------------------
# Depth bounds for groups of Lie type.


@dataclass(frozen=True)
class BoundReport:
    """An upper bound for the depth of a group of Lie type over a field
    of size p^k, with the case of the bound that applied."""

    family: FamilyDescriptor
    applicable_case: str
    bound_value: int | None
    smooth_bound: float
    blocked_on: int | None = None

    def to_dict(self) -> dict:
        out = {
            "family": self.family.to_dict(),
            "applicable_case": self.applicable_case,
            "bound_value": self.bound_value,
            "smooth_bound": round(self.smooth_bound, 4),
        }
        if self.blocked_on is not None:
            out["blocked_on"] = str(self.blocked_on)
        return out


_LIE_KINDS = (KIND_PSL, KIND_SUZUKI, KIND_REE, KIND_LIE)


def lie_depth_bound(d: FamilyDescriptor) -> BoundReport:
    """Depth bound for a simple group of Lie type over a field of size
    p^k. Rank one groups in characteristic 2 and odd-dimensional unitary
    groups over fields of even square order get sharper constants than
    the generic three-log bound."""
    if d.kind not in _LIE_KINDS:
        raise DomainError(f"{d.describe()} is not of Lie type")
    if d.kind == KIND_LIE and d.name.startswith("A"):
        # Same group in classical dress; the rank one refinement may apply.
        d = psl_descriptor(int(d.name[1:]) + 1, d.q)
    p, k = split_prime_power(d.q)
    omega_k = big_omega(k)
    smooth = depth_bound_from_exponent(k)
    if omega_k is None:
        return BoundReport(d, CASE_GENERIC, None, smooth, blocked_on=k)
    if p == 2 and (d.kind == KIND_SUZUKI or (d.kind == KIND_PSL and d.n == 2)):
        if d.kind == KIND_PSL and k < 2:
            raise NotSimple("L2(2) is the symmetric group on 3 points")
        best, blocked = _min_omega_over([2**r - 1 for r in prime_divisors(k)])
        if best is None:
            return BoundReport(d, CASE_EVEN_CHAR_RANK_ONE, None, smooth, blocked)
        return BoundReport(d, CASE_EVEN_CHAR_RANK_ONE, omega_k + 1 + best, smooth)
    if (
        d.kind == KIND_PSL
        and d.epsilon == -1
        and d.n % 2
        and p == 2
        and k % 2 == 0
    ):
        a = (k & -k).bit_length() - 1
        fermat_like = 2 ** (2**a) + 1
        m = big_omega(fermat_like)
        if m is None:
            return BoundReport(d, CASE_EVEN_CHAR_UNITARY, None, smooth, fermat_like)
        return BoundReport(d, CASE_EVEN_CHAR_UNITARY, 3 * omega_k + 2 * m + 35, smooth)
    return BoundReport(d, CASE_GENERIC, 3 * omega_k + 36, smooth)


def depth_bound_from_exponent(k: float) -> float:
    """Smooth bound in the field exponent alone: 3 log2 k + 2k / log2 2k + 35."""
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    return 3 * math.log2(k) + 2 * k / math.log2(2 * k) + 35


def _length_envelope(length: float) -> float:
    """Larger of the two ways a long chain forces depth: a rank one group
    over a big field, or a big field exponent inside the generic bound."""
    if length < 36:
        raise DomainError(f"envelope needs length >= 36, got {length}")
    rank_one = math.log2(length - 2) + (length - 2) / math.log2(length - 2) + 1
    x = (length - 4) / 3
    return max(rank_one, depth_bound_from_exponent(x))


def depth_bound_from_length(length: float) -> float:
    """Upper bound for depth as a function of chain length alone. Below
    36 the length itself is the only bound."""
    if length < 1:
        raise DomainError(f"need a positive length, got {length}")
    if length < 36:
        return float(length)
    return min(float(length), _length_envelope(length))


@dataclass(frozen=True)
class ExponentWindow:
    """How large the field exponent of a group of Lie type can be, given
    its chain length and its rank data."""

    family: FamilyDescriptor
    rank: int
    weight: int
    length_value: int
    max_exponent: int
    depth_bound: float

    def to_dict(self) -> dict:
        return {
            "family": self.family.to_dict(),
            "rank": self.rank,
            "weight": self.weight,
            "length_value": self.length_value,
            "max_exponent": self.max_exponent,
            "depth_bound": round(self.depth_bound, 4),
        }


def field_exponent_window(d: FamilyDescriptor, length_value: int) -> ExponentWindow:
    """Bound the field exponent k and the depth from a known chain length.

    Each step of the subfield tower costs at least the number of positive
    roots, and two steps are lost at the ends, so k <= (l - 2r) / u.
    """
    rank, weight = descriptor_rank_and_weight(d)
    slack = length_value - 2 * rank
    if slack < weight:
        raise DomainError(
            f"length {length_value} is too small for rank {rank}, weight {weight}"
        )
    return ExponentWindow(
        family=d,
        rank=rank,
        weight=weight,
        length_value=length_value,
        max_exponent=slack // weight,
        depth_bound=depth_bound_from_exponent(slack / weight),
    )
