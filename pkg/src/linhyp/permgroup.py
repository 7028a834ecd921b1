"""Permutation arithmetic and finite-group machinery.

Groups are materialized as explicit element lists closed under composition.
Elements are stored in a canonical order (sorted lexicographically by image
sequence, identity first) so that element indices are deterministic across
runs.  For groups of order at most ``TABLE_LIMIT`` a dense multiplication
table is built, giving O(1) index arithmetic; larger groups fall back to
composing permutations and looking the result up in a hash index.

Composition is left-to-right throughout: ``(p * q)`` applies ``p`` first,
then ``q``, so exponent-style actions compose naturally.
"""

from __future__ import annotations

import os
import threading
from array import array
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    GroupTooLarge,
    GroupTooLargeForAut,
    GroupMismatch,
    IndexOutOfRange,
    MalformedCycle,
    NotASubgroup,
    NotInGroup,
    PointOutOfRange,
    RepeatedPoint,
)

DEFAULT_CLOSURE_CAP = 200_000
CLOSURE_CAP_ENV = "LHM_MAX_GROUP_ORDER"
TABLE_LIMIT = 4096
DEFAULT_AUT_CAP = 2048


class Permutation:
    """A bijection on points 1..n, stored as a 0-based image tuple.

    ``images[i]`` is the (0-based) image of point ``i``.  Points are 1-based
    in every external representation (cycle notation, ``of``).
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("image sequence is not a bijection")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise ValueError("degree must be positive")
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def of(self, point: int) -> int:
        """Image of a 1-based point."""
        if not 1 <= point <= self.degree:
            raise PointOutOfRange(f"point {point} outside 1..{self.degree}")
        return self.images[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise DegreeMismatch(
                f"degree {self.degree} composed with degree {other.degree}")
        o = other.images
        return Permutation(tuple(o[i] for i in self.images))

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(inv)

    def order(self) -> int:
        n = 1
        p = self
        ident = tuple(range(self.degree))
        while p.images != ident:
            p = p * self
            n += 1
        return n

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.degree))

    def is_involution(self) -> bool:
        return not self.is_identity() and (self * self).is_identity()

    def fixed_points(self) -> tuple[int, ...]:
        """1-based points left unchanged."""
        return tuple(i + 1 for i, v in enumerate(self.images) if v == i)

    def extended(self, degree: int) -> Permutation:
        """The same permutation acting on a larger point set."""
        if degree < self.degree:
            raise DegreeMismatch("cannot shrink a permutation")
        return Permutation(self.images + tuple(range(self.degree, degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its minimum."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(p + 1 for p in cyc))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse whitespace-tolerant disjoint-cycle notation like ``(1 2)(3 5)``.

    Points may be separated by spaces or commas.  ``()`` and ``id`` denote
    the identity; points not mentioned are fixed.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    s = text.strip()
    if s == "id":
        return Permutation.identity(degree)
    if not s:
        raise MalformedCycle("empty cycle expression")
    images = list(range(degree))
    seen: set[int] = set()
    i, n = 0, len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise MalformedCycle(f"expected '(' at position {i} in {text!r}")
        close = s.find(")", i + 1)
        if close < 0:
            raise MalformedCycle(f"unclosed cycle in {text!r}")
        points = []
        for tok in s[i + 1:close].replace(",", " ").split():
            if not tok.isdigit():
                raise MalformedCycle(f"non-numeric token {tok!r} in {text!r}")
            points.append(int(tok))
        for p in points:
            if not 1 <= p <= degree:
                raise PointOutOfRange(f"point {p} outside 1..{degree}")
            if p in seen:
                raise RepeatedPoint(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
        i = close + 1
    return Permutation(images)


class FiniteGroup:
    """A fully enumerated permutation group with index-based arithmetic.

    Construct with :func:`closure`; the constructor itself expects the full
    element set and is not meant to complete a partial one.
    """

    def __init__(self, elements: Iterable[Permutation],
                 generators: Sequence[Permutation]):
        elems = sorted(set(elements))
        if not elems:
            raise ValueError("empty element set")
        degree = elems[0].degree
        if any(e.degree != degree for e in elems):
            raise DegreeMismatch("elements of mixed degree")
        if not elems[0].is_identity():
            raise ValueError("identity missing from element set")
        self.degree = degree
        self.elements: tuple[Permutation, ...] = tuple(elems)
        self._index: dict[tuple[int, ...], int] = {
            e.images: i for i, e in enumerate(self.elements)
        }
        gset = []
        for g in generators:
            gi = self._index.get(g.images)
            if gi is None:
                raise NotInGroup(f"generator {g.cycle_string()} not in closure")
            if gi not in gset:
                gset.append(gi)
        self.generator_indices: tuple[int, ...] = tuple(gset)
        self._flat: array | None = None
        if self.order <= TABLE_LIMIT:
            self._flat = self._build_table()
        self._inverse = array("I", (self._index[e.inverse().images]
                                    for e in self.elements))
        self._orders: list[int | None] = [None] * self.order
        self._aut_cache: tuple[GroupAutomorphism, ...] | None = None
        self._aut_lock = threading.Lock()

    # -- pickling: locks do not pickle; caches do -------------------------

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop("_aut_lock", None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._aut_lock = threading.Lock()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def has_table(self) -> bool:
        return self._flat is not None

    def _build_table(self) -> array:
        """Dense multiplication table, built column-by-column.

        Columns are filled in generation order: if element j was first
        reached as parent*g, then column j is the g-column gathered through
        column parent.  This costs O(n^2) index operations instead of
        O(n^2 * degree) compositions.
        """
        n = self.order
        imgs = np.array([e.images for e in self.elements], dtype=np.int64)
        gens = self.generator_indices or (0,)
        gen_cols = {}
        for g in gens:
            composed = imgs[g][imgs]          # row x = images of elements[x]*g
            col = np.empty(n, dtype=np.uint16)
            for x in range(n):
                col[x] = self._index[tuple(composed[x])]
            gen_cols[g] = col
        table = np.empty((n, n), dtype=np.uint16)
        table[:, 0] = np.arange(n, dtype=np.uint16)
        pending = deque([0])
        done = bytearray(n)
        done[0] = 1
        while pending:
            j = pending.popleft()
            for g in gens:
                t = int(gen_cols[g][j])
                if not done[t]:
                    done[t] = 1
                    table[:, t] = gen_cols[g][table[:, j]]
                    pending.append(t)
        if not all(done):
            raise ValueError("generators do not generate the element set")
        flat = array("H")
        flat.frombytes(np.ascontiguousarray(table).tobytes())
        return flat

    def table_view(self) -> np.ndarray:
        """The multiplication table as a read-only (n, n) array."""
        if self._flat is None:
            raise GroupTooLarge("no dense table for groups this large")
        view = np.frombuffer(self._flat, dtype=np.uint16)
        return view.reshape(self.order, self.order)

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.order:
            raise IndexOutOfRange(f"element index {i} outside 0..{self.order - 1}")

    def mul(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j]."""
        if self._flat is not None:
            return self._flat[i * self.order + j]
        return self._index[(self.elements[i] * self.elements[j]).images]

    def inverse_index(self, i: int) -> int:
        self.check_index(i)
        return self._inverse[i]

    def index_of(self, p: Permutation) -> int:
        idx = self._index.get(p.images)
        if idx is None:
            raise NotInGroup(f"{p.cycle_string()} is not an element of this group")
        return idx

    def element_order(self, i: int) -> int:
        self.check_index(i)
        cached = self._orders[i]
        if cached is not None:
            return cached
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        self._orders[i] = k
        return k

    def is_involution_index(self, i: int) -> bool:
        return i != 0 and self.mul(i, i) == 0

    def word(self, i: int) -> str:
        """Cycle notation of element i."""
        self.check_index(i)
        return self.elements[i].cycle_string()

    def subgroup_bits(self, seeds: Sequence[int]) -> int:
        """Bitset of the subgroup generated by the seed indices."""
        bits = 1
        stack = [0]
        for s in seeds:
            if not bits >> s & 1:
                bits |= 1 << s
                stack.append(s)
        mul = self.mul
        while stack:
            x = stack.pop()
            for s in seeds:
                y = mul(x, s)
                if not bits >> y & 1:
                    bits |= 1 << y
                    stack.append(y)
        return bits

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, degree={self.degree})"


def closure(generators: Sequence[Permutation],
            max_order: int | None = None) -> FiniteGroup:
    """Enumerate the group generated by ``generators``.

    ``max_order`` caps the element count (default 200000, overridable via
    the ``LHM_MAX_GROUP_ORDER`` environment variable).
    """
    if not generators:
        raise ValueError("at least one generator is required")
    if max_order is None:
        env = os.environ.get(CLOSURE_CAP_ENV)
        max_order = int(env) if env else DEFAULT_CLOSURE_CAP
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise DegreeMismatch("generators of mixed degree")
    gens = []
    for g in generators:
        if g not in gens:
            gens.append(g)
    ident = Permutation.identity(degree)
    seen = {ident.images: ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y.images not in seen:
                if len(seen) + 1 > max_order:
                    raise GroupTooLarge(
                        f"closure exceeded the cap of {max_order} elements")
                seen[y.images] = y
                queue.append(y)
    return FiniteGroup(seen.values(), gens)


@dataclass(frozen=True)
class ElementSet:
    """A subset of a group's elements, stored as a bitset over indices."""

    group: FiniteGroup
    bits: int

    @classmethod
    def from_indices(cls, group: FiniteGroup,
                     indices: Iterable[int]) -> ElementSet:
        bits = 0
        for i in indices:
            group.check_index(i)
            bits |= 1 << i
        return cls(group, bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def indices(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def union(self, other: ElementSet) -> ElementSet:
        _require_same_group(self, other)
        return ElementSet(self.group, self.bits | other.bits)

    def intersection(self, other: ElementSet) -> ElementSet:
        _require_same_group(self, other)
        return ElementSet(self.group, self.bits & other.bits)

    def is_subgroup(self) -> bool:
        if not self.bits & 1:
            return False
        members = self.indices()
        mul = self.group.mul
        bits = self.bits
        return all(bits >> mul(a, b) & 1 for a in members for b in members)


def _require_same_group(a: ElementSet, b: ElementSet) -> None:
    if a.group is not b.group:
        raise GroupMismatch("element sets belong to different groups")


def _require_subgroup(group: FiniteGroup, h: ElementSet) -> None:
    if h.group is not group:
        raise GroupMismatch("subgroup belongs to a different group")
    if not h.is_subgroup():
        raise NotASubgroup("element set is not closed under multiplication")


def generated_subgroup(group: FiniteGroup,
                       seeds: Sequence[int]) -> ElementSet:
    """The subgroup generated by the given element indices."""
    seeds = list(seeds)
    if not seeds:
        raise IndexOutOfRange("seed list is empty")
    for s in seeds:
        group.check_index(s)
    return ElementSet(group, group.subgroup_bits(seeds))


def subgroup_index(group: FiniteGroup, h: ElementSet) -> int:
    """|G| / |H|; Lagrange guarantees exactness for subgroups."""
    _require_subgroup(group, h)
    size = len(h)
    if group.order % size:
        raise NotASubgroup("subgroup order does not divide the group order")
    return group.order // size


def product_set(a: ElementSet, b: ElementSet) -> ElementSet:
    """The set of all pairwise products {x*y : x in a, y in b}."""
    _require_same_group(a, b)
    g = a.group
    bits = 0
    if g.has_table:
        flat, n = g._flat, g.order
        for x in a.indices():
            base = x * n
            for y in b.indices():
                bits |= 1 << flat[base + y]
    else:
        for x in a.indices():
            for y in b.indices():
                bits |= 1 << g.mul(x, y)
    return ElementSet(g, bits)


def conjugate_set(group: FiniteGroup, s: ElementSet, g: int) -> ElementSet:
    """{g^-1 x g : x in s}."""
    if s.group is not group:
        raise GroupMismatch("element set belongs to a different group")
    group.check_index(g)
    ginv = group.inverse_index(g)
    bits = 0
    for x in s.indices():
        bits |= 1 << group.mul(group.mul(ginv, x), g)
    return ElementSet(group, bits)


def normal_core(group: FiniteGroup, h: ElementSet) -> ElementSet:
    """The largest normal subgroup of the group contained in ``h``.

    Repeatedly intersects with generator conjugates; the fixpoint is
    normalized by every generator, hence normal.
    """
    _require_subgroup(group, h)
    core = h
    while True:
        refined = core
        for g in group.generator_indices:
            refined = refined.intersection(conjugate_set(group, refined, g))
        if refined.bits == core.bits:
            return core
        core = refined


def involutions(group: FiniteGroup) -> list[int]:
    """Indices of all elements of order exactly 2, ascending."""
    return [i for i in range(1, group.order) if group.mul(i, i) == 0]


class GroupAutomorphism:
    """A group automorphism as an index map over the element list."""

    __slots__ = ("group", "mapping")

    def __init__(self, group: FiniteGroup, mapping: Sequence[int]):
        self.group = group
        self.mapping = tuple(mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: GroupAutomorphism) -> GroupAutomorphism:
        """Apply self first, then other."""
        if other.group is not self.group:
            raise GroupMismatch("automorphisms of different groups")
        om = other.mapping
        return GroupAutomorphism(self.group, tuple(om[i] for i in self.mapping))

    def inverse(self) -> GroupAutomorphism:
        inv = [0] * len(self.mapping)
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return GroupAutomorphism(self.group, inv)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GroupAutomorphism)
                and self.group is other.group
                and self.mapping == other.mapping)

    def __hash__(self) -> int:
        return hash(self.mapping)

    def __repr__(self) -> str:
        gens = self.group.generator_indices
        imgs = ", ".join(
            f"{self.group.word(g)}->{self.group.word(self.mapping[g])}"
            for g in gens)
        return f"GroupAutomorphism({imgs})"


def minimal_generating_sequence(group: FiniteGroup) -> list[int]:
    """Greedy irredundant generating sequence, smallest indices first."""
    chosen: list[int] = []
    bits = 1
    for i in range(1, group.order):
        if bits >> i & 1:
            continue
        chosen.append(i)
        bits = group.subgroup_bits(chosen)
        if bits.bit_count() == group.order:
            break
    return chosen


def _bfs_subgroup(group: FiniteGroup, gens: Sequence[int]):
    """Subgroup elements in BFS order plus parent definitions.

    Returns ``(elems, defs)`` where each non-identity element e in ``elems``
    was first reached as ``defs[e] = (parent, k)`` meaning e = parent*gens[k].
    """
    elems = [0]
    defs: dict[int, tuple[int, int]] = {}
    seen = 1
    queue = deque([0])
    mul = group.mul
    while queue:
        x = queue.popleft()
        for k, g in enumerate(gens):
            y = mul(x, g)
            if not seen >> y & 1:
                seen |= 1 << y
                defs[y] = (x, k)
                elems.append(y)
                queue.append(y)
    return elems, defs


def automorphism_group(group: FiniteGroup,
                       max_order: int = DEFAULT_AUT_CAP
                       ) -> list[GroupAutomorphism]:
    """The complete automorphism group, in a deterministic order.

    Backtracks on images of a greedy minimal generating sequence.  A partial
    image tuple survives level j only if it induces an injective map on the
    subgroup generated by the first j generators that respects the
    multiplication table, which prunes hard enough for groups in the
    hundreds of elements.  The result list is frozen on the group, so
    concurrent callers compute it at most once.
    """
    if group.order > max_order:
        raise GroupTooLargeForAut(
            f"|G| = {group.order} exceeds the automorphism cap {max_order}")
    with group._aut_lock:
        if group._aut_cache is None:
            group._aut_cache = tuple(_compute_automorphisms(group))
    return list(group._aut_cache)


def _compute_automorphisms(group: FiniteGroup) -> list[GroupAutomorphism]:
    n = group.order
    if n == 1:
        return [GroupAutomorphism(group, (0,))]
    gens = minimal_generating_sequence(group)
    levels = [_bfs_subgroup(group, gens[:j + 1]) for j in range(len(gens))]
    by_order: dict[int, list[int]] = {}
    for i in range(n):
        by_order.setdefault(group.element_order(i), []).append(i)
    mul = group.mul
    results: list[tuple[int, ...]] = []

    def extend(level: int, mapping: list[int], gen_imgs: list[int]) -> None:
        if level == len(gens):
            results.append(tuple(mapping))
            return
        elems, defs = levels[level]
        prefix = gens[:level + 1]
        for cand in by_order[group.element_order(gens[level])]:
            m = mapping.copy()
            imgs = gen_imgs + [cand]
            ok = True
            for e in elems[1:]:
                parent, k = defs[e]
                v = mul(m[parent], imgs[k])
                if m[e] < 0:
                    m[e] = v
                elif m[e] != v:
                    ok = False
                    break
            if not ok:
                continue
            seen = bytearray(n)
            for e in elems:
                me = m[e]
                if seen[me]:
                    ok = False
                    break
                seen[me] = 1
            if not ok:
                continue
            for e in elems:
                me = m[e]
                for k, g in enumerate(prefix):
                    if m[mul(e, g)] != mul(me, imgs[k]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                extend(level + 1, m, imgs)

    start = [-1] * n
    start[0] = 0
    extend(0, start, [])
    results.sort()
    return [GroupAutomorphism(group, m) for m in results]
