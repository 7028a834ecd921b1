"""Regular linear hypermaps as a group with an ordered involution triple.

When the three flag involutions generate a group acting regularly on the
flags, the flags can be identified with the group elements and everything
becomes index arithmetic: the triple (r0, r1, r2) determines vertex,
hyperedge and hyperface stabilizers H = <r1,r2>, K = <r0,r2>, L = <r0,r1>,
and the whole invariant vector of the hypermap follows from subgroup sizes
and element orders.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import (
    DichotomyViolated,
    GroupMismatch,
    IndexOutOfRange,
    InternalCheckFailed,
    InvalidHypermap,
    InvalidTriple,
    ParseError,
)
from .hypermap import FlagHypermap, genus_from_euler
from .permgroup import (
    ElementSet,
    FiniteGroup,
    Permutation,
    automorphism_group,
    generated_subgroup,
    normal_core,
    parse_cycles,
    product_set,
)
from .report import CheckResult, ValidationReport


@dataclass(frozen=True)
class InvolutionTriple:
    """An ordered triple of distinct involutions, given by element indices."""

    group: FiniteGroup
    r0: int
    r1: int
    r2: int

    def __post_init__(self):
        for i in (self.r0, self.r1, self.r2):
            if not 0 <= i < self.group.order:
                raise IndexOutOfRange(f"element index {i} out of range")
            if not self.group.is_involution_index(i):
                raise InvalidTriple(
                    f"element {self.group.word(i)} does not have order 2")
        if len({self.r0, self.r1, self.r2}) != 3:
            raise InvalidTriple("the three involutions must be distinct")

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.r0, self.r1, self.r2)

    def words(self) -> tuple[str, str, str]:
        return tuple(self.group.word(i) for i in self.indices)

    def __repr__(self) -> str:
        return "InvolutionTriple(%s; %s; %s)" % self.words()


def triple_from_words(group: FiniteGroup, text: str) -> InvolutionTriple:
    """Parse a semicolon-separated triple literal like ``"(1 2);(1 3);(2 3)"``."""
    parts = text.split(";")
    if len(parts) != 3:
        raise ParseError(
            f"expected three cycle words separated by ';', got {len(parts)}")
    idx = [group.index_of(parse_cycles(p, group.degree)) for p in parts]
    return InvolutionTriple(group, *idx)


@dataclass(frozen=True)
class MSequence:
    """The invariant vector [genus; k,m,n; V,E,F; flags] plus orientability."""

    genus: int
    k: int
    m: int
    n: int
    vertices: int
    hyperedges: int
    hyperfaces: int
    flags: int
    orientable: bool

    @property
    def type(self) -> tuple[int, int, int]:
        return (self.k, self.m, self.n)

    @property
    def proper(self) -> bool:
        return min(self.k, self.m, self.n) >= 3

    def __str__(self) -> str:
        return "[%d;%d,%d,%d;%d,%d,%d;%d]" % (
            self.genus, self.k, self.m, self.n,
            self.vertices, self.hyperedges, self.hyperfaces, self.flags)


class CoreType(enum.Enum):
    """The two possible cores of the vertex stabilizer."""

    TRIVIAL_CORE = "trivial"
    CENTRAL_R2 = "central-r2"


def validate_regular(t: InvolutionTriple) -> ValidationReport:
    """Generation plus the two subgroup conditions, as report entries."""
    g = t.group
    checks: list[CheckResult] = []

    span = g.subgroup_bits(list(t.indices))
    generates = span.bit_count() == g.order
    checks.append(CheckResult(
        "generates", generates,
        "" if generates else
        f"triple generates a subgroup of order {span.bit_count()} < {g.order}"))

    h = generated_subgroup(g, [t.r1, t.r2])
    k = generated_subgroup(g, [t.r0, t.r2])
    expected = 1 | 1 << t.r2
    cond1 = (h.bits & k.bits) == expected
    checks.append(CheckResult(
        "stabilizer-intersection", cond1,
        "" if cond1 else
        f"<r1,r2> meets <r0,r2> in {(h.bits & k.bits).bit_count()} elements"))

    hk = product_set(h, k).bits
    kh = product_set(k, h).bits
    cond2 = (hk & kh) == (h.bits | k.bits)
    checks.append(CheckResult(
        "product-intersection", cond2,
        "" if cond2 else "HK and KH overlap beyond H union K"))

    return ValidationReport(tuple(checks))


@dataclass(frozen=True)
class RegularLinearHypermap:
    """A validated triple with its cached stabilizer subgroups."""

    triple: InvolutionTriple
    vertex_stabilizer: ElementSet = field(repr=False)
    hyperedge_stabilizer: ElementSet = field(repr=False)
    hyperface_stabilizer: ElementSet = field(repr=False)

    @classmethod
    def from_triple(cls, t: InvolutionTriple) -> RegularLinearHypermap:
        report = validate_regular(t)
        if not report.ok:
            raise InvalidHypermap(
                "triple is not a regular linear hypermap: "
                + ", ".join(report.failed_names()))
        g = t.group
        return cls(
            triple=t,
            vertex_stabilizer=generated_subgroup(g, [t.r1, t.r2]),
            hyperedge_stabilizer=generated_subgroup(g, [t.r0, t.r2]),
            hyperface_stabilizer=generated_subgroup(g, [t.r0, t.r1]),
        )

    @property
    def group(self) -> FiniteGroup:
        return self.triple.group

    def m_sequence(self) -> MSequence:
        return m_sequence(self)

    def dual(self) -> RegularLinearHypermap:
        return dual(self)

    def core_dichotomy(self) -> CoreType:
        return core_dichotomy(self)

    def to_flag_hypermap(self) -> FlagHypermap:
        return to_flag_hypermap(self)

    def is_isomorphic_to(self, other: RegularLinearHypermap) -> bool:
        return is_isomorphic(self.triple, other.triple)

    def __repr__(self) -> str:
        return "RegularLinearHypermap(%s; %s; %s)" % self.triple.words()


def m_sequence(m: RegularLinearHypermap) -> MSequence:
    """Type from element orders, cell counts from subgroup indices."""
    g = m.group
    t = m.triple
    k = g.element_order(g.mul(t.r1, t.r2))
    mm = g.element_order(g.mul(t.r0, t.r2))
    n = g.element_order(g.mul(t.r0, t.r1))
    v = g.order // len(m.vertex_stabilizer)
    e = g.order // len(m.hyperedge_stabilizer)
    f = g.order // len(m.hyperface_stabilizer)
    ori = _orientable(m)
    chi = v + e + f - g.order // 2
    return MSequence(
        genus=genus_from_euler(chi, ori),
        k=k, m=mm, n=n,
        vertices=v, hyperedges=e, hyperfaces=f,
        flags=g.order, orientable=ori,
    )


def _orientable(m: RegularLinearHypermap) -> bool:
    """Orientable iff the rotation subgroup <r0r2, r1r2> has index 2."""
    g = m.group
    t = m.triple
    even = generated_subgroup(g, [g.mul(t.r0, t.r2), g.mul(t.r1, t.r2)])
    index = g.order // len(even)
    if index == 2:
        return True
    if index == 1:
        return False
    raise InternalCheckFailed(
        f"rotation subgroup has index {index}; a validated hypermap "
        "admits only 1 or 2")


def dual(m: RegularLinearHypermap) -> RegularLinearHypermap:
    """Swap the roles of vertices and hyperedges: (r0, r1, r2) -> (r1, r0, r2)."""
    t = m.triple
    return RegularLinearHypermap.from_triple(
        InvolutionTriple(t.group, t.r1, t.r0, t.r2))


def is_isomorphic(t1: InvolutionTriple, t2: InvolutionTriple) -> bool:
    """True iff some group automorphism maps one triple to the other."""
    if t1.group is not t2.group:
        raise GroupMismatch("triples live in different groups")
    target = t2.indices
    return any(
        (a.mapping[t1.r0], a.mapping[t1.r1], a.mapping[t1.r2]) == target
        for a in automorphism_group(t1.group))


def core_dichotomy(m: RegularLinearHypermap) -> CoreType:
    """Classify the normal core of the vertex stabilizer.

    Validated hypermaps admit exactly two outcomes: trivial core, or the
    two-element subgroup generated by r2 (in which case r2 is central).
    Any other core is a contradiction and raises.
    """
    core = normal_core(m.group, m.vertex_stabilizer)
    if core.bits == 1:
        return CoreType.TRIVIAL_CORE
    if core.bits == (1 | 1 << m.triple.r2):
        return CoreType.CENTRAL_R2
    raise DichotomyViolated(
        f"core of the vertex stabilizer has order {len(core)}")


def to_flag_hypermap(m: RegularLinearHypermap) -> FlagHypermap:
    """The regular flag representation: flags are group elements, r_i acts
    by right multiplication."""
    g = m.group
    perms = []
    for r in m.triple.indices:
        perms.append(Permutation([g.mul(x, r) for x in range(g.order)]))
    return FlagHypermap(*perms)
