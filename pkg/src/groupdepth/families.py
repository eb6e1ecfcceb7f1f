"""Constructors for the group families the library works with.

Concrete permutation groups (alternating, symmetric, cyclic, dihedral,
projective two-dimensional linear over small fields) are built here, along
with symbolic family descriptors for groups that are only handled through
formulas and bounds (large linear and unitary groups, Suzuki and Ree
groups, sporadic groups, exceptional Lie types).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import numtheory
from .errors import DomainError, NotPrime, OrderCapExceeded, UnknownName, UnsupportedField
from .numtheory import FactoredInt, factorize, is_prime
from .permcore import DEFAULT_MAX_ORDER, FiniteGroup, Permutation, close, from_cycles

# Irreducible moduli for the prime-power fields, coefficients by ascending
# degree: 4: x^2+x+1, 8: x^3+x+1, 9: x^2+1, 16: x^4+x+1, 25: x^2+3,
# 27: x^3+2x+1, 32: x^5+x^2+1.
_FIELD_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (3, 0, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
}

SUPPORTED_FIELD_SIZES = frozenset(
    {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32}
)


class SmallField:
    """Arithmetic in GF(q) for the supported q, elements encoded as the
    integers 0..q-1 (base-p digit vectors of the polynomial coefficients)."""

    def __init__(self, q: int):
        if q not in SUPPORTED_FIELD_SIZES:
            raise UnsupportedField(f"no field of size {q} available")
        self.q = q
        p = _least_prime_factor(q)
        self.p = p
        self.k = round(math.log(q, p))
        self._mul_table = [[0] * q for _ in range(q)]
        self._add_table = [[0] * q for _ in range(q)]
        mod = _FIELD_MODULI.get(q)
        for a in range(q):
            for b in range(q):
                self._add_table[a][b] = self._poly_add(a, b)
                self._mul_table[a][b] = self._poly_mul(a, b, mod)
        self._inv_table = [0] * q
        for a in range(1, q):
            self._inv_table[a] = next(
                b for b in range(1, q) if self._mul_table[a][b] == 1
            )
        self.generator = self._find_generator()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits: list[int]) -> int:
        val = 0
        for c in reversed(digits):
            val = val * self.p + c
        return val

    def _poly_add(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def _poly_mul(self, a: int, b: int, mod: tuple[int, ...] | None) -> int:
        if self.k == 1:
            return a * b % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        # Reduce by the monic modulus.
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, m in enumerate(mod[:-1]):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * m) % self.p
        return self._encode(prod[: self.k])

    def add(self, a: int, b: int) -> int:
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        return next(b for b in range(self.q) if self._add_table[a][b] == 0)

    def mul(self, a: int, b: int) -> int:
        return self._mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv_table[a]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("0 is not in the multiplicative group")
        n, x = 1, a
        while x != 1:
            x = self._mul_table[x][a]
            n += 1
        return n

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        return next(
            a for a in range(2, self.q) if self.element_order(a) == self.q - 1
        )


def _least_prime_factor(q: int) -> int:
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if q % p == 0:
            return p
    raise UnsupportedField(f"{q} is not a supported prime power")


@lru_cache(maxsize=None)
def gf(q: int) -> SmallField:
    return SmallField(q)


# ---------------------------------------------------------------------------
# Concrete permutation groups.


def cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Cyclic group of order n, as disjoint cycles of prime-power length.

    One cycle per maximal prime power dividing n, so the degree is the sum
    of those prime powers (the least faithful degree) rather than n itself.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if n > max_order:
        raise OrderCapExceeded(f"cyclic group of order {n} is over the cap {max_order}")
    if n == 1:
        return FiniteGroup([Permutation([0])], [Permutation([0])], "C1")
    parts = [p**m for p, m in factorize(n).factors]
    degree = sum(parts)
    cycles, start = [], 0
    for size in parts:
        cycles.append(tuple(range(start, start + size)))
        start += size
    g = from_cycles(degree, cycles)
    return close([g], label=f"C{n}", max_order=max_order)


def dihedral(order: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Dihedral group of the given (even) order, acting on order/2 points."""
    if order < 2 or order % 2:
        raise DomainError(f"dihedral groups have even order >= 2, got {order}")
    if order > max_order:
        raise OrderCapExceeded(f"dihedral order {order} is over the cap {max_order}")
    m = order // 2
    if m == 1:
        return close([Permutation([1, 0])], label="D2", max_order=max_order)
    if m == 2:
        # Degenerate: the Klein four-group on 4 points.
        a = from_cycles(4, [(0, 1)])
        b = from_cycles(4, [(2, 3)])
        return close([a, b], label="D4", max_order=max_order)
    rot = Permutation([(i + 1) % m for i in range(m)])
    ref = Permutation([(m - i) % m for i in range(m)])
    g = close([rot, ref], label=f"D{order}", max_order=max_order)
    assert g.order == order
    return g


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if math.factorial(n) > max_order:
        raise OrderCapExceeded(f"|S{n}| = {n}! is over the cap {max_order}")
    if n == 1:
        return FiniteGroup([Permutation([0])], [Permutation([0])], "S1")
    gens = [from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(Permutation([(i + 1) % n for i in range(n)]))
    g = close(gens, label=f"S{n}", max_order=max_order)
    assert g.order == math.factorial(n)
    return g


def alternating(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if n < 3:
        e = Permutation(list(range(n)))
        return FiniteGroup([e], [e], f"A{n}")
    expected = math.factorial(n) // 2
    if expected > max_order:
        raise OrderCapExceeded(f"|A{n}| = {n}!/2 is over the cap {max_order}")
    three_cycle = from_cycles(n, [(0, 1, 2)])
    if n <= 3:
        gens = [three_cycle]
    elif n % 2:
        gens = [three_cycle, Permutation([(i + 1) % n for i in range(n)])]
    else:
        cyc = from_cycles(n, [tuple(range(1, n))])  # (1 2 ... n-1), even
        gens = [three_cycle, cyc]
    g = close(gens, label=f"A{n}", max_order=max_order)
    assert g.order == expected
    return g


def psl2(q: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """PSL(2, q) acting on the q + 1 points of the projective line.

    Points are field elements by their integer code, with infinity last.
    Generators: the translation x -> x + 1, the diagonal map by a generator
    of the group of squares, and the Weyl reflection x -> -1/x. The order
    is checked against q(q^2-1)/gcd(2, q-1) after closure.
    """
    if q < 2:
        raise DomainError(f"need a prime power q >= 2, got {q}")
    field = gf(q)
    expected = q * (q * q - 1) // math.gcd(2, q - 1)
    if expected > max_order:
        raise OrderCapExceeded(f"|L2({q})| = {expected} is over the cap {max_order}")
    inf = q
    alpha = field.generator
    # For odd q the diagonal torus inside the projective special group is
    # the group of squares, so the generator is alpha squared there.
    scale = field.mul(alpha, alpha) if q % 2 else alpha
    trans = Permutation([field.add(x, 1) for x in range(q)] + [inf])
    diag = Permutation([field.mul(scale, x) for x in range(q)] + [inf])
    weyl_images = [0] * (q + 1)
    weyl_images[0] = inf
    weyl_images[inf] = 0
    for x in range(1, q):
        weyl_images[x] = field.neg(field.inv(x))
    weyl = Permutation(weyl_images)
    g = close([trans, diag, weyl], label=f"L2({q})", max_order=max_order)
    if g.order != expected:
        raise DomainError(
            f"construction of L2({q}) came out with order {g.order}, expected {expected}"
        )
    return g


# ---------------------------------------------------------------------------
# Symbolic family descriptors.

KIND_ALTERNATING = "alternating"
KIND_SYMMETRIC = "symmetric"
KIND_CYCLIC = "cyclic"
KIND_DIHEDRAL = "dihedral"
KIND_PSL = "psl"  # epsilon +1 linear, -1 unitary
KIND_SUZUKI = "suzuki"
KIND_REE = "ree"
KIND_SPORADIC = "sporadic"
KIND_LIE = "lie"  # exceptional and classical types by Lie name, e.g. E8, B2

SPORADIC_NAMES = (
    "M11", "M12", "M22", "M23", "M24",
    "J1", "J2", "J3", "J4",
    "HS", "McL", "He", "Ru", "Suz", "ON",
    "Co1", "Co2", "Co3",
    "Fi22", "Fi23", "Fi24'",
    "HN", "Ly", "Th", "B", "M",
)

_SPORADIC_ALIASES = {
    "O'N": "ON", "F24": "Fi24'", "F24'": "Fi24'", "FI24": "Fi24'", "FI24'": "Fi24'",
    "BM": "B", "F1": "M", "F2": "B",
    "BABYMONSTER": "B", "MONSTER": "M",
}


def normalize_sporadic(name: str) -> str:
    raw = name.strip().replace("_", "").replace(" ", "")
    if raw in _SPORADIC_ALIASES:
        return _SPORADIC_ALIASES[raw]
    for known in SPORADIC_NAMES:
        if raw.lower() == known.lower():
            return known
    upper = raw.upper()
    if upper in _SPORADIC_ALIASES:
        return _SPORADIC_ALIASES[upper]
    raise UnknownName(f"unknown sporadic group {name!r}")


@dataclass(frozen=True)
class FamilyDescriptor:
    """A named group family member, possibly too large to construct."""

    kind: str
    n: int | None = None  # degree (alternating/symmetric/cyclic/PSL dimension) or order (dihedral)
    q: int | None = None  # field size
    epsilon: int | None = None  # +1 linear, -1 unitary, for the psl kind
    name: str | None = None  # sporadic name or Lie type label

    def __post_init__(self):
        if self.kind in (KIND_ALTERNATING, KIND_SYMMETRIC, KIND_CYCLIC):
            if self.n is None or self.n < 1:
                raise DomainError(f"bad degree in descriptor {self}")
        if self.kind == KIND_DIHEDRAL:
            if self.n is None or self.n < 2 or self.n % 2:
                raise DomainError(f"dihedral descriptor needs an even order, got {self.n}")
        if self.kind == KIND_PSL:
            if self.n is None or self.n < 2 or self.q is None or self.epsilon not in (1, -1):
                raise DomainError(f"bad linear/unitary descriptor {self}")
        if self.kind in (KIND_SUZUKI, KIND_REE, KIND_LIE) and self.q is None:
            raise DomainError(f"{self.kind} descriptor needs a field size")
        if self.kind == KIND_SPORADIC and self.name is None:
            raise DomainError("sporadic descriptor needs a name")

    @property
    def field_char(self) -> int:
        p, _ = split_prime_power(self.q)
        return p

    @property
    def field_exponent(self) -> int:
        _, k = split_prime_power(self.q)
        return k

    def describe(self) -> str:
        if self.kind == KIND_ALTERNATING:
            return f"A{self.n}"
        if self.kind == KIND_SYMMETRIC:
            return f"S{self.n}"
        if self.kind == KIND_CYCLIC:
            return f"C{self.n}"
        if self.kind == KIND_DIHEDRAL:
            return f"D{self.n}"
        if self.kind == KIND_PSL:
            if self.n == 2:
                return f"L2({self.q})"
            letter = "L" if self.epsilon == 1 else "U"
            return f"{letter}{self.n}({self.q})"
        if self.kind == KIND_SUZUKI:
            return f"Sz({self.q})"
        if self.kind == KIND_REE:
            return f"R({self.q})"
        if self.kind == KIND_SPORADIC:
            return self.name
        if self.kind == KIND_LIE:
            return f"{self.name}({self.q})"
        return self.kind

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for key in ("n", "q", "epsilon", "name"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "FamilyDescriptor":
        return cls(
            kind=d["kind"],
            n=d.get("n"),
            q=d.get("q"),
            epsilon=d.get("epsilon"),
            name=d.get("name"),
        )


def split_prime_power(q: int | None) -> tuple[int, int]:
    """q = p**k with p prime; raises if q is not a prime power."""
    if q is None or q < 2:
        raise DomainError(f"need a prime power >= 2, got {q}")
    f = factorize(q)
    if len(f.factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p, k = f.factors[0]
    return p, k


def alternating_descriptor(n: int) -> FamilyDescriptor:
    return FamilyDescriptor(KIND_ALTERNATING, n=n)


def symmetric_descriptor(n: int) -> FamilyDescriptor:
    return FamilyDescriptor(KIND_SYMMETRIC, n=n)


def cyclic_descriptor(n: int) -> FamilyDescriptor:
    return FamilyDescriptor(KIND_CYCLIC, n=n)


def dihedral_descriptor(order: int) -> FamilyDescriptor:
    return FamilyDescriptor(KIND_DIHEDRAL, n=order)


def psl_descriptor(n: int, q: int, epsilon: int = 1) -> FamilyDescriptor:
    split_prime_power(q)
    return FamilyDescriptor(KIND_PSL, n=n, q=q, epsilon=epsilon)


def suzuki_descriptor(q: int) -> FamilyDescriptor:
    p, k = split_prime_power(q)
    if p != 2 or k < 3 or k % 2 == 0:
        raise DomainError(f"Suzuki groups need q = 2^k with odd k >= 3, got {q}")
    return FamilyDescriptor(KIND_SUZUKI, q=q)


def ree_descriptor(q: int) -> FamilyDescriptor:
    p, k = split_prime_power(q)
    if p != 3 or k < 3 or k % 2 == 0:
        raise DomainError(f"small Ree groups need q = 3^k with odd k >= 3, got {q}")
    return FamilyDescriptor(KIND_REE, q=q)


def sporadic_descriptor(name: str) -> FamilyDescriptor:
    return FamilyDescriptor(KIND_SPORADIC, name=normalize_sporadic(name))


def lie_descriptor(name: str, q: int) -> FamilyDescriptor:
    lie_rank_and_weight(name)  # validate the label
    split_prime_power(q)
    return FamilyDescriptor(KIND_LIE, q=q, name=name.upper())


def lie_rank_and_weight(name: str) -> tuple[int, int]:
    """(rank r, number of positive roots u) for an untwisted Lie type label
    like A4, B3, C2, D5, G2, F4, E6, E7, E8."""
    label = name.strip().upper()
    if len(label) < 2 or label[0] not in "ABCDEFG" or not label[1:].isdigit():
        raise UnknownName(f"unrecognized Lie type label {name!r}")
    letter, r = label[0], int(label[1:])
    if r < 1:
        raise UnknownName(f"bad rank in {name!r}")
    if letter == "A":
        return r, r * (r + 1) // 2
    if letter in "BC":
        if r < 2:
            raise UnknownName(f"{label} needs rank >= 2")
        return r, r * r
    if letter == "D":
        if r < 3:
            raise UnknownName(f"{label} needs rank >= 3")
        return r, r * (r - 1)
    exceptional = {"G2": (2, 6), "F4": (4, 24), "E6": (6, 36), "E7": (7, 63), "E8": (8, 120)}
    if label in exceptional:
        return exceptional[label]
    raise UnknownName(f"unrecognized Lie type label {name!r}")


def descriptor_rank_and_weight(d: FamilyDescriptor) -> tuple[int, int]:
    """(r, u): the untwisted rank and the power of p in the group order."""
    if d.kind == KIND_PSL:
        n = d.n
        if d.epsilon == 1:
            return n - 1, n * (n - 1) // 2
        return n // 2, n * (n - 1) // 2
    if d.kind == KIND_SUZUKI:
        return 1, 2
    if d.kind == KIND_REE:
        return 1, 3
    if d.kind == KIND_LIE:
        return lie_rank_and_weight(d.name)
    raise DomainError(f"{d.describe()} has no Lie rank data")


# Orders of the sporadic groups, stored factored; standard reference data.
_SPORADIC_ORDER_FACTORS: dict[str, dict[int, int]] = {
    "M11": {2: 4, 3: 2, 5: 1, 11: 1},
    "M12": {2: 6, 3: 3, 5: 1, 11: 1},
    "M22": {2: 7, 3: 2, 5: 1, 7: 1, 11: 1},
    "M23": {2: 7, 3: 2, 5: 1, 7: 1, 11: 1, 23: 1},
    "M24": {2: 10, 3: 3, 5: 1, 7: 1, 11: 1, 23: 1},
    "J1": {2: 3, 3: 1, 5: 1, 7: 1, 11: 1, 19: 1},
    "J2": {2: 7, 3: 3, 5: 2, 7: 1},
    "J3": {2: 7, 3: 5, 5: 1, 17: 1, 19: 1},
    "J4": {2: 21, 3: 3, 5: 1, 7: 1, 11: 3, 23: 1, 29: 1, 31: 1, 37: 1, 43: 1},
    "HS": {2: 9, 3: 2, 5: 3, 7: 1, 11: 1},
    "McL": {2: 7, 3: 6, 5: 3, 7: 1, 11: 1},
    "He": {2: 10, 3: 3, 5: 2, 7: 3, 17: 1},
    "Ru": {2: 14, 3: 3, 5: 3, 7: 1, 13: 1, 29: 1},
    "Suz": {2: 13, 3: 7, 5: 2, 7: 1, 11: 1, 13: 1},
    "ON": {2: 9, 3: 4, 5: 1, 7: 3, 11: 1, 19: 1, 31: 1},
    "Co1": {2: 21, 3: 9, 5: 4, 7: 2, 11: 1, 13: 1, 23: 1},
    "Co2": {2: 18, 3: 6, 5: 3, 7: 1, 11: 1, 23: 1},
    "Co3": {2: 10, 3: 7, 5: 3, 7: 1, 11: 1, 23: 1},
    "Fi22": {2: 17, 3: 9, 5: 2, 7: 1, 11: 1, 13: 1},
    "Fi23": {2: 18, 3: 13, 5: 2, 7: 1, 11: 1, 13: 1, 17: 1, 23: 1},
    "Fi24'": {2: 21, 3: 16, 5: 2, 7: 3, 11: 1, 13: 1, 17: 1, 23: 1, 29: 1},
    "HN": {2: 14, 3: 6, 5: 6, 7: 1, 11: 1, 19: 1},
    "Ly": {2: 8, 3: 7, 5: 6, 7: 1, 11: 1, 31: 1, 37: 1, 67: 1},
    "Th": {2: 15, 3: 10, 5: 3, 7: 2, 13: 1, 19: 1, 31: 1},
    "B": {2: 41, 3: 13, 5: 6, 7: 2, 11: 1, 13: 1, 17: 1, 19: 1, 23: 1, 31: 1, 47: 1},
    "M": {2: 46, 3: 20, 5: 9, 7: 6, 11: 2, 13: 3, 17: 1, 19: 1, 23: 1, 29: 1,
          31: 1, 41: 1, 47: 1, 59: 1, 71: 1},
}


def order_of(d: FamilyDescriptor) -> FactoredInt:
    """Group order with its factorization; complete whenever feasible."""
    if d.kind == KIND_ALTERNATING:
        return _factored_factorial(d.n, halve=True)
    if d.kind == KIND_SYMMETRIC:
        return _factored_factorial(d.n, halve=False)
    if d.kind in (KIND_CYCLIC, KIND_DIHEDRAL):
        return factorize(d.n)
    if d.kind == KIND_SPORADIC:
        return FactoredInt.from_factor_map(_SPORADIC_ORDER_FACTORS[d.name])
    if d.kind == KIND_PSL:
        return _psl_order(d.n, d.q, d.epsilon)
    if d.kind == KIND_SUZUKI:
        q = d.q
        return _product_of_factored([factorize(q), factorize(q), factorize(q * q + 1), factorize(q - 1)])
    if d.kind == KIND_REE:
        q = d.q
        return _product_of_factored(
            [factorize(q)] * 3 + [factorize(q**3 + 1), factorize(q - 1)]
        )
    if d.kind == KIND_LIE:
        raise DomainError(f"orders of generic Lie descriptors are not modeled ({d.describe()})")
    raise DomainError(f"unknown kind {d.kind}")


TRIAL_FACTORIAL_GUARD = 1_000_000


def _factored_factorial(n: int, halve: bool) -> FactoredInt:
    if n >= TRIAL_FACTORIAL_GUARD:
        raise DomainError(f"factorial order for n={n} is not supported")
    if n < 2 or (halve and n == 2):
        return FactoredInt.from_factor_map({})
    factors: dict[int, int] = {}
    for p in numtheory._small_primes():
        if p > n:
            break
        e, pk = 0, p
        while pk <= n:
            e += n // pk
            pk *= p
        factors[p] = e
    if halve:
        factors[2] -= 1
        if factors.get(2) == 0:
            del factors[2]
    return FactoredInt.from_factor_map(factors)


def _product_of_factored(parts: list[FactoredInt]) -> FactoredInt:
    factors: dict[int, int] = {}
    complete = True
    certified = True
    value = 1
    for f in parts:
        value *= f.value
        complete &= f.complete
        certified &= f.certified
        for p, m in f.factors:
            factors[p] = factors.get(p, 0) + m
    items = tuple(sorted(factors.items()))
    return FactoredInt(value=value, factors=items, complete=complete, certified=certified)


def _psl_order(n: int, q: int, epsilon: int) -> FactoredInt:
    parts = [FactoredInt.from_factor_map({p: k * (n * (n - 1) // 2) for p, k in [split_prime_power(q)]})]
    for i in range(2, n + 1):
        term = q**i - 1 if epsilon == 1 else q**i - (-1) ** i
        parts.append(factorize(term))
    gcd_div = math.gcd(n, q - epsilon)
    combined = _product_of_factored(parts)
    if gcd_div == 1:
        return combined
    value = combined.value // gcd_div
    if not combined.complete:
        return FactoredInt(value, (), False, combined.certified)
    factors = dict(combined.factors)
    for p, m in factorize(gcd_div).factors:
        factors[p] -= m
        if factors[p] == 0:
            del factors[p]
    return FactoredInt(value, tuple(sorted(factors.items())), True, combined.certified)
