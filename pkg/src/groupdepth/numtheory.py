"""Integer factorization, primality and prime searches.

Factorization runs trial division over a fixed small-prime table and then
Pollard's rho (Brent variant) under an explicit step budget, so results on
adversarial inputs degrade to an honest partial factorization instead of
hanging. Everything below 2**64 factors completely and deterministically.

Primality is Miller-Rabin: a witness set that is exact below 2**64, and 64
pseudo-random rounds above (error probability below 2**-128; results above
the deterministic range are flagged through FactoredInt.certified).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from random import Random

from .errors import (
    DomainError,
    GoldbachSearchExhausted,
    IncompleteFactorization,
    NotFoundWithinLimit,
)

TRIAL_DIVISION_LIMIT = 1_000_000
DEFAULT_FACTOR_BUDGET = 2_000_000  # Pollard rho iterations across all attempts
DETERMINISTIC_BELOW = 1 << 64

# Strong-pseudoprime witnesses: exact for every n < 3.3e24, in particular
# for the whole deterministic range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_ROUNDS_ABOVE = 64


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 2**64 and strongly probable above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if n < DETERMINISTIC_BELOW:
        bases = _MR_BASES
    else:
        rng = Random(n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(_MR_ROUNDS_ABOVE))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primality_is_certified(n: int) -> bool:
    """Whether is_prime(n) is an exact answer rather than a probable one."""
    return n < DETERMINISTIC_BELOW


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * TRIAL_DIVISION_LIMIT
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(TRIAL_DIVISION_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(TRIAL_DIVISION_LIMIT) if sieve[i])


def _pollard_brent(n: int, budget: int | None) -> tuple[int | None, int]:
    """One nontrivial factor of composite odd n, or None if budget ran out.

    Deterministic: the polynomial constant c and the starting point walk a
    fixed schedule. Returns (factor, steps_used).
    """
    steps = 0
    c = 1
    while True:
        y, m = 2, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                steps += min(m, r - k)
                if budget is not None and steps > budget:
                    return None, steps
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # Backtrack one multiplication at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                steps += 1
        if g != n:
            return g, steps
        c += 1  # rare: the whole cycle collapsed, retry with a new constant


@dataclass(frozen=True)
class FactoredInt:
    """An integer with as much of its prime factorization as was found.

    factors is sorted (prime, multiplicity) pairs. When complete is False
    the product of the listed factors is a proper divisor of value and the
    cofactor is composite but unfactored. certified is False when any
    listed prime only passed probabilistic testing.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    complete: bool
    certified: bool = True

    def omega(self) -> int | None:
        """Number of prime factors counted with multiplicity, None if unknown."""
        if not self.complete:
            return None
        return sum(m for _, m in self.factors)

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def factored_part(self) -> int:
        out = 1
        for p, m in self.factors:
            out *= p**m
        return out

    def cofactor(self) -> int:
        return self.value // self.factored_part()

    def to_dict(self) -> dict:
        return {
            "value": str(self.value),
            "factors": [[str(p), m] for p, m in self.factors],
            "complete": self.complete,
            "certified": self.certified,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FactoredInt":
        return cls(
            value=int(d["value"]),
            factors=tuple((int(p), int(m)) for p, m in d["factors"]),
            complete=bool(d["complete"]),
            certified=bool(d["certified"]),
        )

    @classmethod
    def from_factor_map(cls, factors: dict[int, int], certified: bool = True) -> "FactoredInt":
        items = tuple(sorted((p, m) for p, m in factors.items() if m))
        value = 1
        for p, m in items:
            value *= p**m
        return cls(value=value, factors=items, complete=True, certified=certified)


def factorize(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> FactoredInt:
    """Factor n >= 1. Always complete below 2**64; budgeted above."""
    if n < 1:
        raise DomainError(f"cannot factor {n}, expected a positive integer")
    if n == 1:
        return FactoredInt(1, (), True)
    factors: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    certified = True
    complete = True
    remaining = budget
    stack = [m] if m > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if v < TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT or is_prime(v):
            # Below the square of the trial bound anything left is prime.
            if v >= DETERMINISTIC_BELOW:
                certified = False
            factors[v] = factors.get(v, 0) + 1
            continue
        f, used = _pollard_brent(v, None if v < DETERMINISTIC_BELOW else remaining)
        remaining = max(0, remaining - used)
        if f is None:
            complete = False
            continue
        stack.append(f)
        stack.append(v // f)
    return FactoredInt(
        value=n,
        factors=tuple(sorted(factors.items())),
        complete=complete,
        certified=certified,
    )


def big_omega(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> int | None:
    """Omega(n), the number of prime factors with multiplicity; None if the
    factorization did not complete within budget (never a wrong number)."""
    return factorize(n, budget).omega()


def prime_divisors(k: int, budget: int = DEFAULT_FACTOR_BUDGET) -> tuple[int, ...]:
    """The distinct primes dividing k, in increasing order."""
    f = factorize(k, budget)
    if not f.complete:
        raise IncompleteFactorization(k)
    return f.distinct_primes()


# ---------------------------------------------------------------------------
# Three-prime decompositions of odd numbers.

_goldbach_sieve = bytearray()


def _ensure_sieve(limit: int) -> bytearray:
    global _goldbach_sieve
    if len(_goldbach_sieve) < limit + 1:
        size = max(limit + 1, 2 * len(_goldbach_sieve), 1 << 16)
        sieve = bytearray([1]) * size
        sieve[0] = sieve[1] = 0
        for i in range(2, math.isqrt(size - 1) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _goldbach_sieve = sieve
    return _goldbach_sieve


@dataclass(frozen=True)
class GoldbachTriple:
    """m written as p1 + p2 + p3 with p1 <= p2 <= p3 all prime."""

    m: int
    p1: int
    p2: int
    p3: int

    def __post_init__(self):
        if self.p1 + self.p2 + self.p3 != self.m:
            raise DomainError(f"{self.p1}+{self.p2}+{self.p3} != {self.m}")
        if not self.p1 <= self.p2 <= self.p3:
            raise DomainError("triple is not sorted")
        for p in (self.p1, self.p2, self.p3):
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")

    def all_odd(self) -> bool:
        return self.p1 > 2

    def to_dict(self) -> dict:
        return {"m": self.m, "p1": self.p1, "p2": self.p2, "p3": self.p3}

    @classmethod
    def from_dict(cls, d: dict) -> "GoldbachTriple":
        return cls(m=int(d["m"]), p1=int(d["p1"]), p2=int(d["p2"]), p3=int(d["p3"]))


def ternary_goldbach(m: int) -> GoldbachTriple:
    """Smallest three-prime decomposition of odd m >= 7.

    All-odd triples are preferred (they exist for every odd m >= 9 in the
    verified range); among candidates the lexicographically least
    (p1, p2, p3) with p1 <= p2 <= p3 is returned, so output is deterministic.
    """
    if m < 7 or m % 2 == 0:
        raise DomainError(f"need an odd integer >= 7, got {m}")
    sieve = _ensure_sieve(m)
    # p1 = 3 nearly always works; the loop is for completeness.
    p1 = 3
    while 3 * p1 <= m:
        if sieve[p1]:
            rest = m - p1
            p2 = p1
            while 2 * p2 <= rest:
                if sieve[p2] and sieve[rest - p2]:
                    return GoldbachTriple(m, p1, p2, rest - p2)
                p2 += 2
        p1 += 2
    # No all-odd triple (m = 7 is the only known case): allow p = 2 pairs.
    if m - 4 >= 2 and sieve[m - 4]:
        return GoldbachTriple(m, 2, 2, m - 4)
    raise GoldbachSearchExhausted(f"no three-prime decomposition found for {m}")


def ternary_goldbach_range(start: int, stop: int):
    """Yield ternary_goldbach(m) for every odd m in [start, stop).

    Shares one sieve across the sweep; used by the acceptance run over all
    odd m up to 10**6.
    """
    _ensure_sieve(stop)
    first = start if start % 2 else start + 1
    for m in range(max(first, 7), stop, 2):
        yield ternary_goldbach(m)


# ---------------------------------------------------------------------------
# Congruence-constrained prime search.


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x = r1 (mod m1), x = r2 (mod m2); moduli coprime."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t


def _first_primes_above(bound: int, count: int) -> tuple[int, ...]:
    out = []
    p = bound + 1
    while len(out) < count:
        if is_prime(p):
            out.append(p)
        p += 1
    return tuple(out)


def depth3_prime_search(n: int, limit: int = 10_000_000) -> int:
    """Smallest prime p <= limit with p = +-3 or +-13 (mod 40) and
    p = 1 (mod r) for each of the first n-1 primes r > 5.

    The congruence on 40 pins the quadratic characters of 2 and 5; the
    congruences mod r force Omega(p - 1) >= n. Candidates are enumerated
    by CRT residue class, so the search touches only admissible integers.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    small = _first_primes_above(5, n - 1)
    modulus = 40
    for r in small:
        modulus *= r
    residues = []
    for a in (3, 13, 27, 37):
        x, mod = a, 40
        for r in small:
            x = _crt_pair(x, mod, 1, r)
            mod *= r
        residues.append(x % modulus)
    residues.sort()
    base = 0
    while base <= limit:
        for r in residues:
            p = base + r
            if p > limit:
                break
            if p > 5 and is_prime(p):
                return p
        base += modulus
    raise NotFoundWithinLimit(
        f"no admissible prime up to {limit} for n={n} (modulus {modulus})"
    )
