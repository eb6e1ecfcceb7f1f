"""Exhaustive subgroup lattices of small groups.

Enumeration seeds with every cyclic subgroup and repeatedly joins known
subgroups with cyclic ones until nothing new appears; every subgroup is a
join of cyclic subgroups, so the fixpoint is the complete lattice. Cover
relations come from inclusion testing stratified by order, followed by a
maximality filter. Shortest and longest top-to-bottom chains through the
cover relation give the two chain statistics of interest, and a dynamic
program returns the full multiset of maximal chain lengths.

The inner loops run on numpy index tables. Products are looked up either
in a full n-by-n multiplication table or, for groups whose degree makes
that table too expensive, through a fingerprint map, so enumeration stays
usable up to the configured caps (PSL(2,13) at order 1092 routinely, A7 at
order 2520 as a best-effort run).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, LatticeCapExceeded
from .permcore import FiniteGroup

DEFAULT_MAX_GROUP_ORDER = 2500
DEFAULT_MAX_SUBGROUPS = 100_000
_TABLE_WORK_LIMIT = 600_000_000  # n*n*degree threshold for the full table
_FINGERPRINT_SEED = 0x5EED


class _GroupIndex:
    """Element indexing plus fast products for one parent group."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        n = group.order
        d = group.degree
        self.n = n
        imgs = np.array([p.images for p in group.elements], dtype=np.int64)
        self.imgs = imgs
        # Identity is the lexicographic minimum, hence index 0.
        self.identity = 0
        assert (imgs[0] == np.arange(d)).all()
        rng = np.random.default_rng(_FINGERPRINT_SEED)
        while True:
            self.rvec = rng.integers(1, 1 << 62, size=d, dtype=np.uint64)
            fps = self._fingerprint(imgs)
            if len(np.unique(fps)) == n:
                break
        self.fps = fps
        self.fp_sorted = np.sort(fps)
        self.fp_order = np.argsort(fps)
        self.table: np.ndarray | None = None
        if n * n * d <= _TABLE_WORK_LIMIT:
            self.table = self._build_table()
        inv = np.empty(n, dtype=np.int64)
        arange = np.arange(d)
        for i in range(n):
            inv_images = np.empty(d, dtype=np.int64)
            inv_images[imgs[i]] = arange
            inv[i] = self._lookup(inv_images[None, :])[0]
        self.inverse = inv

    def _fingerprint(self, rows: np.ndarray) -> np.ndarray:
        return (rows.astype(np.uint64) * self.rvec).sum(axis=1, dtype=np.uint64)

    def _lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of known group elements given as image rows."""
        pos = np.searchsorted(self.fp_sorted, self._fingerprint(rows))
        return self.fp_order[pos]

    def _build_table(self) -> np.ndarray:
        n = self.n
        table = np.empty((n, n), dtype=np.int32)
        imgs = self.imgs
        for a in range(n):
            # Row a: images of (a * b) for every b, since (a*b)(x) = a(b(x)).
            table[a] = self._lookup(imgs[a][imgs])
        return table

    def products(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Flat array of all pairwise products left[i] * right[j]."""
        if self.table is not None:
            return self.table[left[:, None], right].ravel()
        out = np.empty((len(left), len(right)), dtype=np.int64)
        imgs = self.imgs
        for j, r in enumerate(right):
            out[:, j] = self._lookup(imgs[left][:, imgs[r]])
        return out.ravel()

    def close(
        self,
        gens: np.ndarray,
        seed: np.ndarray | None = None,
        abort_above: int | None = None,
    ) -> np.ndarray | None:
        """Sorted element indices of the subgroup generated by gens.

        Words over the generators are grown breadth-first by right
        multiplication. A seed set of known members (any subset of the
        closure containing the identity) shortcuts the early levels. If
        abort_above is set and the closure exceeds it, returns None (used
        to cut off joins that can only be the parent group).
        """
        mask = np.zeros(self.n, dtype=bool)
        gens = np.unique(gens)
        if seed is None:
            frontier = gens
        else:
            frontier = np.union1d(seed, gens)
        mask[frontier] = True
        mask[self.identity] = True
        count = int(mask.sum())
        if abort_above is not None and count > abort_above:
            return None
        fresh = np.zeros(self.n, dtype=bool)
        while frontier.size:
            prods = self.products(frontier, gens)
            fresh[:] = False
            fresh[prods] = True
            fresh &= ~mask
            mask |= fresh
            frontier = np.flatnonzero(fresh)
            count += frontier.size
            if abort_above is not None and count > abort_above:
                return None
        return np.flatnonzero(mask)

    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.n, dtype=np.int64)
        orders[self.identity] = 1
        for i in range(self.n):
            if orders[i]:
                continue
            chain = [i]
            x = self._product_single(i, i)
            while x != self.identity:
                chain.append(x)
                x = self._product_single(x, i)
            m = len(chain) + 1
            # chain[j] = g^(j+1) has order m / gcd(j+1, m)
            for j, e in enumerate(chain):
                orders[e] = m // int(np.gcd(j + 1, m))
        return orders

    def _product_single(self, a: int, b: int) -> int:
        if self.table is not None:
            return int(self.table[a, b])
        row = self.imgs[a][self.imgs[b]]
        return int(self._lookup(row[None, :])[0])


@dataclass
class LatticeNode:
    ident: int
    order: int
    elements: np.ndarray  # sorted element indices into the parent group
    gens: tuple[int, ...]

    def generator_perms(self, group: FiniteGroup):
        return [group.elements[i] for i in self.gens]


@dataclass
class MaximalChain:
    """A top-to-bottom chain through the cover relation, by node id."""

    nodes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


class SubgroupLattice:
    """The complete subgroup lattice of a finite group."""

    def __init__(
        self,
        group: FiniteGroup,
        nodes: list[LatticeNode],
        cover_edges: list[tuple[int, int]],
        index: _GroupIndex,
    ):
        self.group = group
        self.nodes = nodes
        self.cover_edges = cover_edges
        self._index = index
        self.bottom = 0
        self.top = len(nodes) - 1
        assert nodes[self.bottom].order == 1
        assert nodes[self.top].order == group.order
        self._children: list[list[int]] = [[] for _ in nodes]
        self._parents: list[list[int]] = [[] for _ in nodes]
        for big, small in cover_edges:
            self._children[big].append(small)
            self._parents[small].append(big)
        for lst in self._children:
            lst.sort()
        for lst in self._parents:
            lst.sort()
        self._depth_to_bottom: list[int] | None = None
        self._height_to_bottom: list[int] | None = None

    # -- basic structure ----------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def maximal_subgroups_of(self, node_id: int) -> list[int]:
        return list(self._children[node_id])

    def order_of(self, node_id: int) -> int:
        return self.nodes[node_id].order

    # -- chain statistics ---------------------------------------------------

    def _compute_depths(self) -> list[int]:
        """Shortest cover-path length from each node down to the bottom."""
        if self._depth_to_bottom is None:
            dist = [0] * self.node_count
            for v in self._order_ascending():
                if v == self.bottom:
                    continue
                dist[v] = 1 + min(dist[c] for c in self._children[v])
            self._depth_to_bottom = dist
        return self._depth_to_bottom

    def _compute_heights(self) -> list[int]:
        if self._height_to_bottom is None:
            dist = [0] * self.node_count
            for v in self._order_ascending():
                if v == self.bottom:
                    continue
                dist[v] = 1 + max(dist[c] for c in self._children[v])
            self._height_to_bottom = dist
        return self._height_to_bottom

    def _order_ascending(self) -> list[int]:
        # Node ids are already sorted by (order, elements), so id order is a
        # valid topological order from bottom to top.
        return list(range(self.node_count))

    def depth(self) -> int:
        """Length of the shortest unrefinable chain from the group to 1."""
        return self._compute_depths()[self.top]

    def length(self) -> int:
        """Length of the longest chain of subgroups from the group to 1."""
        return self._compute_heights()[self.top]

    def chain_difference(self) -> int:
        return self.length() - self.depth()

    def chain_ratio(self) -> Fraction:
        return Fraction(self.length(), self.depth())

    def depth_witness(self) -> MaximalChain:
        return self._witness(self._compute_depths())

    def length_witness(self) -> MaximalChain:
        return self._witness(self._compute_heights(), longest=True)

    def _witness(self, dist: list[int], longest: bool = False) -> MaximalChain:
        path = [self.top]
        v = self.top
        while v != self.bottom:
            want = dist[v] - 1
            # Smallest node id among qualifying children, for reproducibility.
            v = next(c for c in self._children[v] if dist[c] == want)
            path.append(v)
        return MaximalChain(tuple(path))

    def all_maximal_chain_lengths(self) -> Counter:
        """Multiset {chain length: count} over all maximal chains."""
        polys: list[Counter] = [Counter() for _ in range(self.node_count)]
        polys[self.bottom][0] = 1
        for v in self._order_ascending():
            if v == self.bottom:
                continue
            acc = polys[v]
            for c in self._children[v]:
                for length, cnt in polys[c].items():
                    acc[length + 1] += cnt
        return polys[self.top]

    # -- node structure helpers --------------------------------------------

    def node_element_orders(self, node_id: int) -> np.ndarray:
        orders = self._index.element_orders()
        return orders[self.nodes[node_id].elements]

    def node_is_abelian(self, node_id: int) -> bool:
        elems = self.nodes[node_id].elements
        for i, a in enumerate(elems):
            for b in elems[i + 1 :]:
                if self._index._product_single(a, b) != self._index._product_single(b, a):
                    return False
        return True

    def node_is_nilpotent(self, node_id: int) -> bool:
        """Nilpotent iff for each prime p the p-elements number exactly the
        p-part of the subgroup order (all Sylows normal)."""
        node = self.nodes[node_id]
        orders = self.node_element_orders(node_id)
        m = node.order
        for p in _distinct_primes(m):
            p_part = 1
            while m % (p_part * p) == 0:
                p_part *= p
            count = int(np.count_nonzero(_is_prime_power_of(orders, p)))
            if count != p_part:
                return False
        return True

    def node_label(self, node_id: int) -> str:
        return f"#{node_id}|{self.nodes[node_id].order}"

    # -- serialization ------------------------------------------------------

    def to_dict(self, include_nodes: bool = True) -> dict:
        out = {
            "schema": 1,
            "group": self.group.label,
            "group_order": self.group.order,
            "node_count": self.node_count,
            "depth": self.depth(),
            "length": self.length(),
            "chain_difference": self.chain_difference(),
            "chain_ratio": [self.chain_ratio().numerator, self.chain_ratio().denominator],
            "depth_witness": list(self.depth_witness().nodes),
            "length_witness": list(self.length_witness().nodes),
        }
        if include_nodes:
            out["nodes"] = [
                {
                    "id": node.ident,
                    "order": node.order,
                    "generators": [repr(g) for g in node.generator_perms(self.group)],
                }
                for node in self.nodes
            ]
            out["cover_edges"] = [list(e) for e in self.cover_edges]
        return out

    def to_dot(self) -> str:
        lines = [
            "digraph subgroups {",
            "  rankdir=BT;",
            '  node [shape=box, fontsize=10];',
        ]
        for node in self.nodes:
            lines.append(f'  n{node.ident} [label="{self.node_label(node.ident)}"];')
        for big, small in self.cover_edges:
            lines.append(f"  n{small} -> n{big};")
        lines.append("}")
        return "\n".join(lines)


def verify_depth_recursion(lat: SubgroupLattice) -> bool:
    """Check the defining recursion of depth at every node: the depth of a
    nontrivial subgroup is one more than the smallest depth among its
    maximal subgroups. Recomputed here by breadth-first search over the
    cover relation, independent of the lattice's cached dynamic program.
    """
    from collections import deque

    dist = [None] * lat.node_count
    dist[lat.bottom] = 0
    queue = deque([lat.bottom])
    parents_of = [[] for _ in range(lat.node_count)]
    for big, small in lat.cover_edges:
        parents_of[small].append(big)
    while queue:
        v = queue.popleft()
        for up in parents_of[v]:
            if dist[up] is None:
                dist[up] = dist[v] + 1
                queue.append(up)
    if any(d is None for d in dist):
        return False
    for v in range(lat.node_count):
        if v == lat.bottom:
            continue
        children = lat.maximal_subgroups_of(v)
        if not children:
            return False
        if dist[v] != 1 + min(dist[c] for c in children):
            return False
    return dist[lat.top] == lat.depth()


def _distinct_primes(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _is_prime_power_of(orders: np.ndarray, p: int) -> np.ndarray:
    rem = orders.copy()
    while True:
        div = rem % p == 0
        if not div.any():
            break
        rem[div] //= p
    return rem == 1


def enumerate_subgroups(
    group: FiniteGroup,
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
    max_subgroups: int = DEFAULT_MAX_SUBGROUPS,
) -> SubgroupLattice:
    """Enumerate every subgroup of group and assemble the cover relation."""
    if group.order > max_group_order:
        raise LatticeCapExceeded(
            f"{group.label} has order {group.order}, over the lattice cap {max_group_order}"
        )
    index = _GroupIndex(group)
    nodes_by_key: dict[bytes, tuple[np.ndarray, tuple[int, ...]]] = {}

    def add_node(elems: np.ndarray, gens: tuple[int, ...]) -> bool:
        key = elems.astype(">i4").tobytes()
        if key in nodes_by_key:
            return False
        nodes_by_key[key] = (elems, gens)
        if len(nodes_by_key) > max_subgroups:
            raise LatticeCapExceeded(
                f"{group.label}: more than {max_subgroups} subgroups"
            )
        return True

    n = group.order
    full = np.arange(n)
    gen_indices = tuple(
        int(index._lookup(np.array(g.images)[None, :])[0]) for g in group.generators
    )
    add_node(full, gen_indices)
    trivial = np.array([index.identity])
    add_node(trivial, (index.identity,))

    cyclic_nodes = _cyclic_subgroups(index)
    for elems, gen in cyclic_nodes:
        add_node(elems, (gen,))

    # Join sweep. Every subgroup is the join of its cyclic subgroups of
    # prime power order, and such a join can be accumulated with the
    # cyclic orders descending. So it suffices to extend each discovered
    # node H by prime power cyclic subgroups C whose order is at most the
    # last order joined into H (tracked as a budget, relaxed upward when a
    # node is rediscovered along a path ending in a larger cyclic).
    ppc = sorted(
        (
            (len(e), e.astype(">i4").tobytes(), e, g)
            for e, g in cyclic_nodes
            if len(_distinct_primes(len(e))) == 1
        ),
    )
    ppc_orders = np.array([t[0] for t in ppc])
    ppc_member = np.zeros((len(ppc), n), dtype=bool)
    for i, (_, _, c_elems, _) in enumerate(ppc):
        ppc_member[i, c_elems] = True

    half = n // 2
    divisors_n = _divisors(n)
    budget: dict[bytes, int] = {}
    processed: dict[bytes, int] = {}
    queue: list[bytes] = []
    for key, (elems, _) in nodes_by_key.items():
        budget[key] = len(elems)
        processed[key] = 0
        queue.append(key)

    def join_can_be_proper(h_order: int, lower_bound: int) -> bool:
        # The join order is a proper multiple of h_order dividing n; if no
        # such multiple fits under n/2 and over the Lagrange bound, the
        # join is the whole group and the closure can be skipped.
        for m in divisors_n:
            if m > half:
                return False
            if m >= lower_bound and m > h_order and m % h_order == 0:
                return True
        return False

    while queue:
        key = queue.pop()
        elems, gens = nodes_by_key[key]
        h_order = len(elems)
        if h_order == n:
            continue
        lo, hi = processed[key], min(budget[key], h_order)
        if lo >= hi:
            continue
        processed[key] = hi
        inter = ppc_member[:, elems].sum(axis=1)
        candidates = np.flatnonzero(
            (ppc_orders > lo) & (ppc_orders <= hi) & (inter < ppc_orders)
        )
        for ci in candidates:
            c_order, c_key, c_elems, c_gen = ppc[ci]
            if not join_can_be_proper(h_order, (h_order * c_order) // int(inter[ci])):
                continue
            joined = index.close(
                np.array(gens + (c_gen,)),
                seed=np.union1d(elems, c_elems),
                abort_above=half,
            )
            if joined is None:
                continue
            j_key = joined.astype(">i4").tobytes()
            if add_node(joined, gens + (c_gen,)):
                budget[j_key] = c_order
                processed[j_key] = 0
                queue.append(j_key)
            elif budget[j_key] < c_order:
                budget[j_key] = c_order
                queue.append(j_key)

    # Canonical node order: by (order, element list).
    entries = sorted(nodes_by_key.items(), key=lambda kv: (len(kv[1][0]), kv[0]))
    nodes = [
        LatticeNode(ident=i, order=len(elems), elements=elems, gens=gens)
        for i, (_, (elems, gens)) in enumerate(entries)
    ]
    cover_edges = _cover_edges(nodes, n)
    return SubgroupLattice(group, nodes, cover_edges, index)


def _cyclic_subgroups(index: _GroupIndex) -> list[tuple[np.ndarray, int]]:
    """All cyclic subgroups as (sorted element indices, generator index).

    Walks the power chain of each not-yet-seen element; every divisor
    subgroup of that chain is emitted at once, so each element is visited a
    bounded number of times.
    """
    n = index.n
    seen = np.zeros(n, dtype=bool)
    seen[index.identity] = True
    out: dict[bytes, tuple[np.ndarray, int]] = {}
    ident_elems = np.array([index.identity])
    out[ident_elems.astype(">i4").tobytes()] = (ident_elems, index.identity)
    for g in range(n):
        if seen[g]:
            continue
        chain = [g]
        x = index._product_single(g, g)
        while x != index.identity:
            chain.append(x)
            x = index._product_single(x, g)
        chain.append(index.identity)  # g^m = e
        m = len(chain)
        seen[chain] = True
        for d in _divisors(m):
            if d == 1:
                continue
            step = m // d
            elems = np.sort(np.array(chain[step - 1 :: step]))
            key = elems.astype(">i4").tobytes()
            if key not in out:
                # generator: g^step, the first entry of the sliced chain
                out[key] = (elems, chain[step - 1])
    return list(out.values())


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _cover_edges(nodes: list[LatticeNode], n: int) -> list[tuple[int, int]]:
    """(big, small) pairs with small maximal in big."""
    count = len(nodes)
    width = (n + 7) // 8
    packed = np.zeros((count, width), dtype=np.uint8)
    for node in nodes:
        mask = np.zeros(n, dtype=bool)
        mask[node.elements] = True
        packed[node.ident] = np.packbits(mask)
    by_order: dict[int, list[int]] = {}
    for node in nodes:
        by_order.setdefault(node.order, []).append(node.ident)
    order_block = {o: np.array(ids) for o, ids in by_order.items()}

    subs_mask = [0] * count  # bitmask over node ids: all proper subgroups
    sups_mask = [0] * count
    containments: list[tuple[int, int]] = []
    for node in nodes:
        big = node.ident
        inv = ~packed[big]
        for o, ids in order_block.items():
            if o >= node.order or node.order % o:
                continue
            hits = ids[np.flatnonzero((packed[ids] & inv).max(axis=1) == 0)]
            for small in hits:
                small = int(small)
                containments.append((big, small))
                subs_mask[big] |= 1 << small
                sups_mask[small] |= 1 << big

    edges = [
        (big, small)
        for big, small in containments
        if not (subs_mask[big] & sups_mask[small])
    ]
    edges.sort()
    return edges
