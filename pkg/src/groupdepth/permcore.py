"""Permutations on n points and finite permutation groups.

Permutations are stored as image tuples: p.images[x] is the image of x.
Composition is (a * b)(x) = a(b(x)), i.e. b acts first. Groups keep their
full element list, sorted by image tuple, so a group's element set is a
canonical object independent of how it was generated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DegreeMismatch, DomainError, OrderCapExceeded

DEFAULT_MAX_ORDER = 1_000_000


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise DomainError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        out = identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def order(self) -> int:
        n = 1
        p = self
        while not p.is_identity():
            p = p * self
            n += 1
        return n

    def sign(self) -> int:
        seen = [False] * self.degree
        sign = 1
        for x in range(self.degree):
            if seen[x]:
                continue
            length = 0
            y = x
            while not seen[y]:
                seen[y] = True
                y = self.images[y]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for x in range(self.degree):
            if seen[x] or self.images[x] == x:
                seen[x] = True
                continue
            cyc = []
            y = x
            while not seen[y]:
                seen[y] = True
                cyc.append(y)
                y = self.images[y]
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)


def identity(degree: int) -> Permutation:
    return Permutation(range(degree))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """a after b: (a * b)(x) = a(b(x))."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degree {a.degree} vs {b.degree}")
    bi = b.images
    ai = a.images
    return Permutation(ai[bi[x]] for x in range(len(ai)))


def from_cycles(degree: int, cycles: Iterable[Iterable[int]]) -> Permutation:
    images = list(range(degree))
    for cyc in cycles:
        pts = list(cyc)
        for i, x in enumerate(pts):
            images[x] = pts[(i + 1) % len(pts)]
    return Permutation(images)


class FiniteGroup:
    """A finite permutation group given by its complete element list."""

    def __init__(self, generators: Iterable[Permutation], elements: Iterable[Permutation], label: str):
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.label = label
        if not self.elements:
            raise DomainError("a group has at least the identity")
        self.degree = self.elements[0].degree

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _element_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(p.images for p in self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._element_set

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"{self.label} (order {self.order}, degree {self.degree})"


def close(
    generators: Iterable[Permutation],
    label: str = "G",
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Breadth-first closure of a generating set.

    The result is independent of generator order: elements are sorted into
    a canonical tuple. Raises OrderCapExceeded as soon as the closure grows
    past max_order.
    """
    gens = list(generators)
    if not gens:
        raise DomainError("need at least one generator")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch("generators act on different point sets")
    ident = tuple(range(degree))
    seen: set[tuple[int, ...]] = {ident}
    seen.update(g.images for g in gens)
    frontier = [g.images for g in gens if not g.is_identity()]
    gen_images = [g.images for g in gens]
    rng = range(degree)
    while frontier:
        new = []
        for w in frontier:
            for gi in gen_images:
                prod = tuple(w[gi[x]] for x in rng)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
        if len(seen) > max_order:
            raise OrderCapExceeded(
                f"closure of {label} passed {max_order} elements"
            )
        frontier = new
    return FiniteGroup(gens, (Permutation(t) for t in seen), label)


def is_subgroup(elements: Iterable[Permutation], group: FiniteGroup) -> bool:
    """Whether the given element set is a subgroup of group.

    Checks membership, identity, and closure under products; inverses come
    free in a finite group.
    """
    elems = set(elements)
    if not elems:
        return False
    if not all(p in group for p in elems):
        return False
    if identity(group.degree) not in elems:
        return False
    return all(a * b in elems for a in elems for b in elems)
