"""Constructive unrefinable chains and witness reports.

Chains are symbolic: a descriptor names each subgroup, carries its order
factored, and tags every step with the kind of maximality argument that
makes it unrefinable. Structural soundness (orders divide, indices
multiply out, declared length matches) is always checked at build time;
the maximality claims themselves lean on cited tables for the big
primitive steps and on stored small-group lattices for the tails, with
oracle spot checks in the test suite for everything small enough to
enumerate.

The alternating-group builder descends by one point when the degree is
odd, splits the remaining natural set along a three-prime decomposition
of its size minus three, and finishes each alternating factor with the
short chains built here for degrees one above a prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, IncompleteFactorization, NotPrime
from .formulas import DepthResult, depth_l2_pk, depth_l2_prime
from .numtheory import (
    DEFAULT_FACTOR_BUDGET,
    FactoredInt,
    big_omega,
    factorize,
    is_prime,
    ternary_goldbach,
)

TAG_INTRANSITIVE = "IntransitiveMax"
TAG_IMPRIMITIVE = "ImprimitiveMax"
TAG_POINT_STABILIZER = "PointStabilizer"
TAG_SUBFIELD = "SubfieldMax"
TAG_BOREL = "BorelMax"
TAG_TABLE = "TableCited"
TAG_PRODUCT = "ProductDescent"
TAG_SMALL_GROUP = "SmallGroupTable"

JUSTIFICATION_TAGS = frozenset({
    TAG_INTRANSITIVE, TAG_IMPRIMITIVE, TAG_POINT_STABILIZER, TAG_SUBFIELD,
    TAG_BOREL, TAG_TABLE, TAG_PRODUCT, TAG_SMALL_GROUP,
})


@dataclass(frozen=True)
class ChainStep:
    """One step down: the subgroup reached and why the step is unrefinable."""

    label: str
    order: FactoredInt
    justification: str


@dataclass(frozen=True)
class ChainDescriptor:
    top_label: str
    top_order: FactoredInt
    steps: tuple[ChainStep, ...]

    @property
    def total_length(self) -> int:
        return len(self.steps)

    def orders(self) -> list[int]:
        return [self.top_order.value] + [s.order.value for s in self.steps]

    def indices(self) -> list[int]:
        seq = self.orders()
        return [a // b for a, b in zip(seq, seq[1:])]

    def validate(self) -> None:
        seq = self.orders()
        for above, below in zip(seq, seq[1:]):
            if below >= above:
                raise DomainError(f"orders do not decrease: {above} then {below}")
            if above % below:
                raise DomainError(f"{below} does not divide {above}")
        if seq[-1] != 1:
            raise DomainError("chain does not reach the trivial group")
        if math.prod(self.indices()) != self.top_order.value:
            raise DomainError("step indices do not multiply to the group order")
        for step in self.steps:
            if step.justification not in JUSTIFICATION_TAGS:
                raise DomainError(f"unknown justification {step.justification!r}")

    def render(self) -> str:
        names = " > ".join([self.top_label] + [s.label for s in self.steps])
        return f"{names} (length {self.total_length})"

    def to_dict(self) -> dict:
        indices = self.indices()
        return {
            "top": {"label": self.top_label, "order": str(self.top_order.value)},
            "steps": [
                {
                    "label": s.label,
                    "order": str(s.order.value),
                    "index": idx,
                    "justification": s.justification,
                }
                for s, idx in zip(self.steps, indices)
            ],
            "total_length": self.total_length,
        }


def _chain(top_label: str, top_order: int | dict | FactoredInt,
           steps: list[tuple[str, int | dict | FactoredInt, str]]) -> ChainDescriptor:
    out = ChainDescriptor(
        top_label=top_label,
        top_order=_factored(top_order),
        steps=tuple(ChainStep(lb, _factored(o), j) for lb, o, j in steps),
    )
    out.validate()
    return out


def _factored(order: int | dict | FactoredInt) -> FactoredInt:
    if isinstance(order, int):
        return factorize(order)
    if isinstance(order, dict):
        return FactoredInt.from_factor_map(order)
    return order


def _factorial_map(n: int) -> dict[int, int]:
    # Legendre's formula; n is small enough for a prime walk.
    out: dict[int, int] = {}
    for p in range(2, n + 1):
        if not is_prime(p):
            continue
        e, pk = 0, p
        while pk <= n:
            e += n // pk
            pk *= p
        out[p] = e
    return out


def _shift2(m: dict[int, int], by: int) -> dict[int, int]:
    out = dict(m)
    out[2] = out.get(2, 0) + by
    if out[2] == 0:
        del out[2]
    elif out[2] < 0:
        raise DomainError("order is not divisible by the required power of 2")
    return out


def _mul_maps(*maps: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for m in maps:
        for p, e in m.items():
            out[p] = out.get(p, 0) + e
    return out


def _alt_order(n: int) -> dict[int, int]:
    if n < 3:
        return {}
    return _shift2(_factorial_map(n), -1)


# ---------------------------------------------------------------------------
# Short chains for L2(p).


def l2p_chain(p: int) -> ChainDescriptor:
    """A shortest known unrefinable chain from L2(p) to 1, length 3 or 4.

    The three-step routes mirror the depth classification: through the
    Borel subgroup when (p-1)/2 is prime, through the dihedral subgroup
    of order p+1 when (p+1)/2 is prime, and through a maximal A4 for the
    residues mod 40 that make A4 maximal. Otherwise a four-step route
    descends into A5 or S4, whichever is maximal.
    """
    if not is_prime(p):
        raise NotPrime(f"need a prime, got {p}")
    if p < 5:
        raise DomainError(f"need p >= 5, got {p}")
    top = f"L2({p})"
    order = p * (p * p - 1) // 2
    half_down, half_up = (p - 1) // 2, (p + 1) // 2
    if p == 5:
        return _chain(top, order, [
            ("D10", 10, TAG_TABLE),
            ("C5", 5, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    if is_prime(half_down):
        return _chain(top, order, [
            (f"{p}:{half_down}", p * half_down, TAG_BOREL),
            (f"C{p}", p, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    if is_prime(half_up):
        # D_{p+1} is maximal for every prime p >= 11; p = 5, 7 never land
        # here because (p-1)/2 is prime for both.
        return _chain(top, order, [
            (f"D{p + 1}", p + 1, TAG_TABLE),
            (f"C{half_up}", half_up, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    if p % 40 in (3, 13, 27, 37):
        return _chain(top, order, [
            ("A4", 12, TAG_TABLE),
            ("C3", 3, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    if p % 10 in (1, 9):
        return _chain(top, order, [
            ("A5", 60, TAG_TABLE),
            ("D10", 10, TAG_SMALL_GROUP),
            ("C5", 5, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    # Here p = +-1 mod 8, else A4 would have been maximal above.
    return _chain(top, order, [
        ("S4", 24, TAG_TABLE),
        ("A4", 12, TAG_SMALL_GROUP),
        ("C3", 3, TAG_SMALL_GROUP),
        ("1", 1, TAG_SMALL_GROUP),
    ])


# ---------------------------------------------------------------------------
# Short chains for alternating groups of degree p + 1.


def ap1_chain(p: int) -> ChainDescriptor:
    """An unrefinable chain from A_{p+1} to 1 of length at most 5.

    Generically A_{p+1} has a maximal L2(p) acting on the projective
    line, and the L2(p) chain finishes the job. For p in {7, 11, 23}
    that subgroup is not maximal; the affine group on 8 points and the
    big Mathieu groups provide the detour, at the same total length.
    """
    if not is_prime(p):
        raise NotPrime(f"need a prime, got {p}")
    if p == 2:
        return _chain("A3", 3, [("1", 1, TAG_SMALL_GROUP)])
    if p == 3:
        return _chain("A4", 12, [("C3", 3, TAG_SMALL_GROUP), ("1", 1, TAG_SMALL_GROUP)])
    if p == 7:
        return _chain("A8", 20160, [
            ("2^3:L3(2)", 1344, TAG_TABLE),
            ("L3(2)", 168, TAG_TABLE),
            ("7:3", 21, TAG_BOREL),
            ("C7", 7, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    if p == 11:
        return _chain("A12", math.factorial(12) // 2, [
            ("M12", 95040, TAG_TABLE),
            ("L2(11)", 660, TAG_TABLE),
            ("11:5", 55, TAG_BOREL),
            ("C11", 11, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    if p == 23:
        return _chain("A24", math.factorial(24) // 2, [
            ("M24", 244823040, TAG_TABLE),
            ("M23", 10200960, TAG_POINT_STABILIZER),
            ("23:11", 253, TAG_TABLE),
            ("C11", 11, TAG_SMALL_GROUP),
            ("1", 1, TAG_SMALL_GROUP),
        ])
    inner = l2p_chain(p)
    steps = [(f"L2({p})", inner.top_order, TAG_TABLE)]
    steps += [(s.label, s.order, s.justification) for s in inner.steps]
    return _chain(f"A{p + 1}", FactoredInt.from_factor_map(_alt_order(p + 1)), steps)


# ---------------------------------------------------------------------------
# The general alternating chain.


def an_chain(n: int) -> ChainDescriptor:
    """An unrefinable chain from A_n to 1 of length at most 23.

    Degrees up to 10 come from a verified table. Above that: drop a
    point if n is odd, split the natural set as 3 + p1 + p2 + p3 along a
    three-prime decomposition, descend to a product of three alternating
    groups of degree one above a prime, and finish each factor in turn.
    """
    if n < 5:
        raise DomainError(f"need n >= 5, got {n}")
    if n <= 10:
        return _small_an_chain(n)

    delta = n % 2
    d = n - delta
    steps: list[tuple[str, int | FactoredInt, str]] = []
    if delta:
        steps.append((f"A{d}", FactoredInt.from_factor_map(_alt_order(d)), TAG_POINT_STABILIZER))

    p1, p2, p3, half_second = _assign_roles(ternary_goldbach(d - 3), d)
    a, m = p1 + 1, p2 + p3 + 2
    # First split is never in half: the role assignment guarantees it.
    fact_a, fact_m = _factorial_map(a), _factorial_map(m)
    steps.append((f"(A{a} x A{d - a}).2", _shift2(_mul_maps(fact_a, fact_m), -1), TAG_INTRANSITIVE))
    steps.append((f"A{a} x A{d - a}", _shift2(_mul_maps(fact_a, fact_m), -2), TAG_INTRANSITIVE))

    left = _alt_order(a)
    b, c = p2 + 1, p3 + 1
    fact_b, fact_c = _factorial_map(b), _factorial_map(c)
    if half_second:
        # b = c: the subset stabilizer sits under an imprimitive group.
        steps.append((
            f"A{a} x (A{b} x A{b}).2^2",
            _mul_maps(left, fact_b, fact_b),
            TAG_IMPRIMITIVE,
        ))
        steps.append((
            f"A{a} x (A{b} x A{b}).2",
            _shift2(_mul_maps(left, fact_b, fact_b), -1),
            TAG_IMPRIMITIVE,
        ))
        steps.append((
            f"A{a} x A{b} x A{b}",
            _shift2(_mul_maps(left, fact_b, fact_b), -2),
            TAG_IMPRIMITIVE,
        ))
    else:
        steps.append((
            f"A{a} x (A{b} x A{c}).2",
            _shift2(_mul_maps(left, fact_b, fact_c), -1),
            TAG_INTRANSITIVE,
        ))
        steps.append((
            f"A{a} x A{b} x A{c}",
            _shift2(_mul_maps(left, fact_b, fact_c), -2),
            TAG_INTRANSITIVE,
        ))

    steps += _product_descent([p1, p2, p3])
    return _chain(f"A{n}", FactoredInt.from_factor_map(_alt_order(n)), steps)


def _assign_roles(triple, d: int) -> tuple[int, int, int, bool]:
    """Pick which prime splits off first. Prefers assignments where the
    second split is not in half and the first is not either; only an
    all-equal triple forces the degenerate second split."""
    a, b, c = sorted((triple.p1, triple.p2, triple.p3))
    for first, rest in ((a, (b, c)), (b, (a, c)), (c, (a, b))):
        if rest[0] != rest[1] and d != 2 * (first + 1):
            return first, rest[0], rest[1], False
    if not (a == b == c):
        raise DomainError(f"no admissible role assignment for {triple} at degree {d}")
    return a, a, a, True


def _product_descent(primes: list[int]) -> list[tuple[str, dict[int, int], str]]:
    """Finish A_{p1+1} x A_{p2+1} x A_{p3+1} one factor at a time."""
    tails = [ap1_chain(p) for p in primes]
    factor_orders = [_alt_order(p + 1) for p in primes]
    labels = [t.top_label for t in tails]
    out = []
    for i, tail in enumerate(tails):
        for step in tail.steps:
            labels[i] = step.label
            factor_orders[i] = {q: e for q, e in step.order.factors}
            shown = [lb for lb in labels if lb != "1"]
            out.append((
                " x ".join(shown) if shown else "1",
                _mul_maps(*factor_orders),
                TAG_PRODUCT,
            ))
    return out


_SMALL_AN_ROUTES = {
    5: ("A5", 60, [
        ("D10", 10, TAG_SMALL_GROUP),
        ("C5", 5, TAG_SMALL_GROUP),
        ("1", 1, TAG_SMALL_GROUP),
    ]),
    7: ("A7", 2520, [
        ("L2(7)", 168, TAG_TABLE),
        ("7:3", 21, TAG_BOREL),
        ("C7", 7, TAG_SMALL_GROUP),
        ("1", 1, TAG_SMALL_GROUP),
    ]),
    9: ("A9", 181440, [
        ("L2(8):3", 1512, TAG_TABLE),
        ("L2(8)", 504, TAG_TABLE),
        ("2^3:7", 56, TAG_BOREL),
        ("C7", 7, TAG_SMALL_GROUP),
        ("1", 1, TAG_SMALL_GROUP),
    ]),
    10: ("A10", 1814400, [
        ("M10", 720, TAG_TABLE),
        ("5:4", 20, TAG_TABLE),
        ("C4", 4, TAG_SMALL_GROUP),
        ("C2", 2, TAG_SMALL_GROUP),
        ("1", 1, TAG_SMALL_GROUP),
    ]),
}


def _small_an_chain(n: int) -> ChainDescriptor:
    if n in (6, 8):
        return ap1_chain(n - 1)
    top, order, steps = _SMALL_AN_ROUTES[n]
    return _chain(top, order, steps)


# ---------------------------------------------------------------------------
# Witness reports: depth 3 with arbitrarily long chains, and depth
# beating the log of the length.


@dataclass(frozen=True)
class LongChainWitness:
    """A prime p where L2(p) has depth three yet chain length above n."""

    n: int
    prime: int
    depth: DepthResult
    omega_p_minus_1: int
    residue_mod_40: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "prime": self.prime,
            "depth": self.depth.to_dict(),
            "omega_p_minus_1": self.omega_p_minus_1,
            "length_exceeds": self.omega_p_minus_1,
            "residue_mod_40": self.residue_mod_40,
        }


def thm16_witness(n: int, limit: int = 10_000_000) -> LongChainWitness:
    """Find a prime p with depth of L2(p) equal to 3 while the chain
    length of L2(p) exceeds n: the dihedral subgroup of order p - 1
    alone carries an unrefinable chain of length Omega(p-1) >= n."""
    from .numtheory import depth3_prime_search

    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    p = depth3_prime_search(n, limit=limit)
    depth = depth_l2_prime(p)
    if depth.value != 3:
        raise DomainError(f"search returned {p} but its depth is {depth.value}")
    omega = big_omega(p - 1)
    if omega is None or omega < n:
        raise DomainError(f"search returned {p} with Omega(p-1) < {n}")
    return LongChainWitness(
        n=n, prime=p, depth=depth, omega_p_minus_1=omega, residue_mod_40=p % 40
    )


@dataclass(frozen=True)
class DepthVsLogWitness:
    """A tower group whose depth exceeds log3 of its length bound."""

    i: int
    field_exponent: int
    depth: DepthResult
    length_cap: int
    log_threshold: float

    @property
    def exceeds(self) -> bool:
        return self.depth.value > self.log_threshold

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "field_size": f"3^{self.field_exponent}",
            "depth": self.depth.to_dict(),
            "length_cap": self.length_cap,
            "log_threshold": round(self.log_threshold, 4),
            "exceeds": self.exceeds,
        }


def prop18_witness(i: int, budget: int = DEFAULT_FACTOR_BUDGET) -> DepthVsLogWitness:
    """Check one rung of the tower L2(3^(3^i)): its depth is i + 2, yet
    its chain length is at most Omega of the group order, which grows
    so slowly that depth > log3(length) + 1."""
    if i < 1:
        raise DomainError(f"need i >= 1, got {i}")
    e = 3**i
    depth = depth_l2_pk(3, e)
    if depth.value != i + 2:
        raise DomainError(f"tower depth came out as {depth.value}, expected {i + 2}")
    torus_part = factorize(3 ** (2 * e) - 1, budget=budget)
    if not torus_part.complete:
        raise IncompleteFactorization(torus_part.cofactor())
    # |L2(3^e)| = 3^e (3^2e - 1) / 2
    length_cap = e + torus_part.omega() - 1
    return DepthVsLogWitness(
        i=i,
        field_exponent=e,
        depth=depth,
        length_cap=length_cap,
        log_threshold=math.log(length_cap, 3) + 1,
    )
