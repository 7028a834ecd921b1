"""Exhaustive classification of regular linear hypermaps on a group.

The classifier streams all ordered triples of distinct involutions in
lexicographic index order, keeps the admissible ones (triple generates the
group and passes both subgroup conditions), and reduces them to one
representative per automorphism orbit.  Deduplication uses a canonical key:
the lexicographically least image tuple of the triple under the full
automorphism group.  A triple is a class representative exactly when it
equals its own key, so the stream needs no storage beyond one counter per
class.
"""

from __future__ import annotations

import multiprocessing
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import LinhypError
from .permgroup import FiniteGroup, automorphism_group, involutions
from .regular import InvolutionTriple, MSequence, RegularLinearHypermap

DEFAULT_JOBS_CAP = 8


def canonical_key(t: InvolutionTriple) -> tuple[int, int, int]:
    """Least image tuple of the triple over all group automorphisms."""
    auts = automorphism_group(t.group)
    r0, r1, r2 = t.indices
    return min((a.mapping[r0], a.mapping[r1], a.mapping[r2]) for a in auts)


class _TripleScanner:
    """Shared state for streaming admissible triples of one group."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.invs = involutions(group)
        self.full = (1 << group.order) - 1
        self._pair_bits: dict[tuple[int, int], int] = {}
        self._pair_members: dict[int, list[int]] = {}
        self._cond2: dict[tuple[int, int], bool] = {}

    def pair(self, a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        bits = self._pair_bits.get(key)
        if bits is None:
            bits = self.group.subgroup_bits(key)
            self._pair_bits[key] = bits
        return bits

    def _members(self, bits: int) -> list[int]:
        out = self._pair_members.get(bits)
        if out is None:
            out, b = [], bits
            while b:
                low = b & -b
                out.append(low.bit_length() - 1)
                b ^= low
            self._pair_members[bits] = out
        return out

    def product_condition(self, hbits: int, kbits: int) -> bool:
        key = (hbits, kbits) if hbits < kbits else (kbits, hbits)
        ok = self._cond2.get(key)
        if ok is None:
            g = self.group
            hs, ks = self._members(hbits), self._members(kbits)
            hk = kh = 0
            if g.has_table:
                flat, n = g._flat, g.order
                for x in hs:
                    base = x * n
                    for y in ks:
                        hk |= 1 << flat[base + y]
                for x in ks:
                    base = x * n
                    for y in hs:
                        kh |= 1 << flat[base + y]
            else:
                for x in hs:
                    for y in ks:
                        hk |= 1 << g.mul(x, y)
                for x in ks:
                    for y in hs:
                        kh |= 1 << g.mul(x, y)
            ok = (hk & kh) == (hbits | kbits)
            self._cond2[key] = ok
        return ok

    def generates(self, r0: int, r1: int, r2: int) -> bool:
        return self.group.subgroup_bits((r0, r1, r2)) == self.full

    def scan(self, r0_values: Sequence[int] | None = None
             ) -> Iterator[tuple[int, int, int]]:
        """Admissible raw index triples, in lexicographic order."""
        invs = self.invs
        ident_bit = 1
        for r0 in (invs if r0_values is None else r0_values):
            for r1 in invs:
                if r1 == r0:
                    continue
                for r2 in invs:
                    if r2 == r0 or r2 == r1:
                        continue
                    h = self.pair(r1, r2)
                    k = self.pair(r0, r2)
                    if h & k != (ident_bit | 1 << r2):
                        continue
                    if not self.product_condition(h, k):
                        continue
                    if not self.generates(r0, r1, r2):
                        continue
                    yield (r0, r1, r2)


def admissible_triples(group: FiniteGroup) -> Iterator[InvolutionTriple]:
    """All ordered involution triples that define a regular linear hypermap."""
    scanner = _TripleScanner(group)
    for r0, r1, r2 in scanner.scan():
        yield InvolutionTriple(group, r0, r1, r2)


@dataclass(frozen=True)
class ClassifiedHypermap:
    """One isomorphism class: its canonical representative and invariants."""

    hypermap: RegularLinearHypermap
    canonical_key: tuple[int, int, int]
    orbit_size: int
    m_seq: MSequence

    @property
    def triple(self) -> InvolutionTriple:
        return self.hypermap.triple

    @property
    def m_sequence(self) -> MSequence:
        return self.m_seq


@dataclass(frozen=True)
class ClassificationResult:
    group_name: str
    group: FiniteGroup = field(repr=False)
    classes: tuple[ClassifiedHypermap, ...]
    admissible_triple_count: int
    aut_group_size: int

    @property
    def class_count(self) -> int:
        return len(self.classes)


# fork workers read this module-level tuple; it is set just before the pool
# is created and cleared afterwards
_FORK_STATE: tuple[_TripleScanner, list[tuple[int, ...]]] | None = None


def _count_orbits(scanner: _TripleScanner, maps: list[tuple[int, ...]],
                  r0_values: Sequence[int] | None
                  ) -> tuple[int, dict[tuple[int, int, int], int]]:
    counts: dict[tuple[int, int, int], int] = {}
    total = 0
    for r0, r1, r2 in scanner.scan(r0_values):
        total += 1
        key = min((m[r0], m[r1], m[r2]) for m in maps)
        counts[key] = counts.get(key, 0) + 1
    return total, counts


def _fork_worker(r0_chunk: list[int]):
    scanner, maps = _FORK_STATE
    return _count_orbits(scanner, maps, r0_chunk)


def classify(group: FiniteGroup, group_name: str = "",
             jobs: int = 1) -> ClassificationResult:
    """One representative per automorphism orbit of admissible triples.

    Deterministic regardless of ``jobs``: workers partition the first
    coordinate, per-class counters merge additively, and the final class
    list is sorted by canonical key.
    """
    auts = automorphism_group(group)
    maps = [a.mapping for a in auts]
    scanner = _TripleScanner(group)

    chunks = _split_round_robin(scanner.invs, jobs)
    if len(chunks) <= 1:
        total, counts = _count_orbits(scanner, maps, None)
    else:
        total, counts = _count_orbits_parallel(scanner, maps, chunks)

    classes = []
    for key in sorted(counts):
        hm = RegularLinearHypermap.from_triple(InvolutionTriple(group, *key))
        classes.append(ClassifiedHypermap(
            hypermap=hm,
            canonical_key=key,
            orbit_size=counts[key],
            m_seq=hm.m_sequence(),
        ))
    return ClassificationResult(
        group_name=group_name,
        group=group,
        classes=tuple(classes),
        admissible_triple_count=total,
        aut_group_size=len(auts),
    )


def _split_round_robin(items: Sequence[int], jobs: int) -> list[list[int]]:
    jobs = max(1, min(jobs, len(items))) if items else 1
    if jobs == 1:
        return [list(items)]
    chunks: list[list[int]] = [[] for _ in range(jobs)]
    for pos, item in enumerate(items):
        chunks[pos % jobs].append(item)
    return chunks


def _count_orbits_parallel(scanner, maps, chunks):
    global _FORK_STATE
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        total, counts = _count_orbits(scanner, maps, None)
        return total, counts
    _FORK_STATE = (scanner, maps)
    try:
        with ctx.Pool(processes=len(chunks)) as pool:
            parts = pool.map(_fork_worker, chunks)
    finally:
        _FORK_STATE = None
    total = sum(p[0] for p in parts)
    counts: dict[tuple[int, int, int], int] = {}
    for _, part in parts:
        for key, c in part.items():
            counts[key] = counts.get(key, 0) + c
    return total, counts


def default_jobs() -> int:
    import os
    return max(1, min(os.cpu_count() or 1, DEFAULT_JOBS_CAP))


# --- census -------------------------------------------------------------------


@dataclass(frozen=True)
class GroupCensusStatus:
    name: str
    order: int
    error: str = ""
    classes_total: int = 0
    classes_matching: int = 0

    @property
    def ok(self) -> bool:
        return not self.error


COVERAGE_NOTE = (
    "Counts cover only the groups supplied in the catalog.  A complete "
    "per-genus census requires enumerating every admissible group order "
    "from an external small-groups database; these totals must not be read "
    "as complete per-genus counts."
)


@dataclass(frozen=True)
class CensusReport:
    """Per-genus class counts over a catalog of groups, with filters."""

    proper_only: bool
    orientable_only: bool
    genus_range: tuple[int, int] | None
    per_genus_orientable: dict[int, int]
    per_genus_non_orientable: dict[int, int]
    per_group: tuple[GroupCensusStatus, ...]
    coverage_note: str = COVERAGE_NOTE

    def filters(self) -> dict:
        return {
            "proper": self.proper_only,
            "orientable": self.orientable_only,
            "genus_range": list(self.genus_range) if self.genus_range else None,
        }


def _passes_filters(ms: MSequence, proper_only: bool, orientable_only: bool,
                    genus_range: tuple[int, int] | None) -> bool:
    if proper_only and not ms.proper:
        return False
    if orientable_only and not ms.orientable:
        return False
    if genus_range is not None and not genus_range[0] <= ms.genus <= genus_range[1]:
        return False
    return True


def genus_upper_bound(order: int, orientable_only: bool) -> int:
    """Largest genus any hypermap with this flag count could reach.

    From the Euler count, 4g - 4 < flags in the orientable case and
    2g - 4 < flags otherwise; used only to warn about hopeless filters.
    """
    if orientable_only:
        return (order + 3) // 4 + 1
    return (order + 3) // 2 + 2


def census(groups: Sequence[tuple[str, FiniteGroup]], *,
           proper_only: bool = False, orientable_only: bool = False,
           genus_range: tuple[int, int] | None = None,
           jobs: int = 1) -> CensusReport:
    """Classify every group and aggregate class counts per genus.

    A failing group (e.g. over the automorphism cap) is recorded in its
    status entry and does not abort the rest.
    """
    ori: Counter[int] = Counter()
    non: Counter[int] = Counter()
    statuses: list[GroupCensusStatus] = []
    for name, group in groups:
        try:
            result = classify(group, name, jobs=jobs)
        except LinhypError as exc:
            statuses.append(GroupCensusStatus(
                name=name, order=group.order,
                error=f"{type(exc).__name__}: {exc}"))
            continue
        matching = 0
        for cls in result.classes:
            ms = cls.m_sequence
            if not _passes_filters(ms, proper_only, orientable_only, genus_range):
                continue
            matching += 1
            (ori if ms.orientable else non)[ms.genus] += 1
        statuses.append(GroupCensusStatus(
            name=name, order=group.order,
            classes_total=result.class_count,
            classes_matching=matching))
    return CensusReport(
        proper_only=proper_only,
        orientable_only=orientable_only,
        genus_range=genus_range,
        per_genus_orientable=dict(sorted(ori.items())),
        per_genus_non_orientable=dict(sorted(non.items())),
        per_group=tuple(statuses),
    )
