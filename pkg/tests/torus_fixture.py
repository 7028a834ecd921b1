"""Hand-encoded torus hypermap: nine vertices, six triangular hyperedges,
three hexagonal hyperfaces.

The data below transcribes a concrete toroidal embedding: each hyperedge is
a triangle of the associated graph, and the three hyperface boundary walks
are hexagons that together use every one of the 18 graph edges exactly once.
Flags are the 36 arcs of the associated graph; the involutions act by

  r0: reverse the arc (cross the edge to the other endpoint),
  r1: at the same vertex, move to the other boundary edge of the same
      hyperface (the arc in the vertex's other triangle),
  r2: at the same vertex, move to the other edge of the same triangle.
"""

from __future__ import annotations

from linhyp.hypermap import FlagHypermap, LinearHypergraph
from linhyp.permgroup import Permutation

TORUS_HYPEREDGES = [
    frozenset({1, 2, 3}),
    frozenset({3, 4, 5}),
    frozenset({4, 6, 7}),
    frozenset({1, 6, 8}),
    frozenset({5, 8, 9}),
    frozenset({2, 7, 9}),
]

# boundary walks of the three hyperfaces, as vertex cycles
TORUS_FACE_CYCLES = [
    (4, 3, 2, 9, 8, 6),
    (5, 3, 1, 6, 7, 9),
    (1, 8, 5, 4, 7, 2),
]


def build_torus_hypermap() -> FlagHypermap:
    triangle_of_edge: dict[frozenset[int], frozenset[int]] = {}
    for tri in TORUS_HYPEREDGES:
        for u in tri:
            for v in tri:
                if u < v:
                    edge = frozenset({u, v})
                    assert edge not in triangle_of_edge, "edge in two triangles"
                    triangle_of_edge[edge] = tri
    assert len(triangle_of_edge) == 18

    # each edge lies on exactly one hyperface walk; record the walk neighbors
    face_neighbors: dict[tuple[int, int], int] = {}
    edges_seen = set()
    for cyc in TORUS_FACE_CYCLES:
        k = len(cyc)
        for i, v in enumerate(cyc):
            before, after = cyc[(i - 1) % k], cyc[(i + 1) % k]
            face_neighbors[(v, after)] = before
            face_neighbors[(v, before)] = after
            edges_seen.add(frozenset({v, after}))
    assert edges_seen == set(triangle_of_edge), "face walks must cover all edges"

    arcs = sorted((v, w) for e in triangle_of_edge for v in e for w in e if v != w)
    assert len(arcs) == 36
    index = {arc: i for i, arc in enumerate(arcs)}

    def images(move) -> Permutation:
        return Permutation([index[move(arc)] for arc in arcs])

    def r0(arc):
        v, w = arc
        return (w, v)

    def r2(arc):
        v, w = arc
        (third,) = triangle_of_edge[frozenset(arc)] - set(arc)
        return (v, third)

    def r1(arc):
        v, w = arc
        return (v, face_neighbors[(v, w)])

    return FlagHypermap(images(r0), images(r1), images(r2))


def torus_hypergraph() -> LinearHypergraph:
    return LinearHypergraph(tuple(range(1, 10)), tuple(TORUS_HYPEREDGES))


def hypergraphs_isomorphic(a: LinearHypergraph, b: LinearHypergraph) -> bool:
    """Brute-force hypergraph isomorphism via hyperedge matchings."""
    from itertools import permutations

    if len(a.vertex_ids) != len(b.vertex_ids):
        return False
    if sorted(map(len, a.hyperedges)) != sorted(map(len, b.hyperedges)):
        return False
    edges_a, edges_b = list(a.hyperedges), list(b.hyperedges)
    for perm in permutations(range(len(edges_b))):
        mapping: dict[int, set[int]] = {
            v: set(b.vertex_ids) for v in a.vertex_ids}
        ok = True
        for i, j in enumerate(perm):
            ea, eb = edges_a[i], edges_b[j]
            if len(ea) != len(eb):
                ok = False
                break
            for v in a.vertex_ids:
                mapping[v] &= eb if v in ea else set(b.vertex_ids) - eb
                if not mapping[v]:
                    ok = False
                    break
            if not ok:
                break
        if ok and _extend_matching(mapping):
            return True
    return False


def _extend_matching(candidates: dict[int, set[int]]) -> bool:
    """Bipartite perfect matching over the candidate sets."""
    order = sorted(candidates, key=lambda v: len(candidates[v]))
    assigned: dict[int, int] = {}

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in sorted(candidates[v]):
            if w not in assigned.values():
                assigned[v] = w
                if backtrack(i + 1):
                    return True
                del assigned[v]
        return False

    return backtrack(0)
