"""Named graph families: blow-ups of C5, C5 with a pendant star, subdivided K_{a,b}.

Vertex numbering is canonical per family. Cycles use 0..n-1 in cyclic order.
Blow-ups list the classes contiguously in the order of the multiplicity vector.
C5 with a pendant star numbers the cycle first (v1..v5 -> 0..4) with the star
centre at v4 (vertex 3), then the leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, from_edge_list


@dataclass(frozen=True)
class BlowupSpec:
    base: Graph
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.multiplicities) != self.base.n:
            raise ValueError("need one multiplicity per base vertex")
        if any(r < 1 for r in self.multiplicities):
            raise ValueError("blow-up multiplicities must be positive")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(t: int) -> Graph:
    """K_{1,t} with centre 0."""
    if t < 1:
        raise ValueError("star needs at least one leaf")
    return from_edge_list(t + 1, [(0, i) for i in range(1, t + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides of K_{a,b} must be nonempty")
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def blow_up(spec: BlowupSpec) -> Graph:
    """H o r: class V_i independent; V_i fully joined to V_j iff v_i v_j is an edge of H."""
    offsets = [0]
    for r in spec.multiplicities:
        offsets.append(offsets[-1] + r)
    classes = [range(offsets[i], offsets[i + 1]) for i in range(spec.base.n)]
    edges = [(x, y) for i, j in spec.base.edges() for x in classes[i] for y in classes[j]]
    return from_edge_list(offsets[-1], edges)


def c5_blowup(n1: int, n2: int, n3: int, n4: int) -> Graph:
    """C5 o (n1, n2, n3, n4, 1); the last class is the single vertex w."""
    return blow_up(BlowupSpec(cycle(5), (n1, n2, n3, n4, 1)))


def order_extremal(n: int) -> Graph:
    """C5 o (n-4, 1, 1, 1, 1)."""
    if n < 5:
        raise ValueError("C5 o (n-4,1,1,1,1) needs n >= 5")
    return c5_blowup(n - 4, 1, 1, 1)


def c5_star(m: int) -> Graph:
    """C5 with the centre of K_{1,m-5} identified with one cycle vertex; order m, size m."""
    if m < 6:
        raise ValueError("C5 with a pendant star needs m >= 6")
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(3, 5 + i) for i in range(m - 5)]
    return from_edge_list(m, edges)


def size_extremal(m: int) -> Graph:
    """C5 for m = 5, otherwise C5 with a pendant star of m-5 leaves."""
    if m == 5:
        return cycle(5)
    return c5_star(m)


def subdivided_complete_bipartite(a: int, b: int) -> Graph:
    """SK_{a,b}: K_{a,b} (sides 0..a-1 and a..a+b-1) with edge (0, a) subdivided by vertex a+b."""
    if a < 1 or b < 1:
        raise ValueError("both sides of K_{a,b} must be nonempty")
    edges = [(i, a + j) for i in range(a) for j in range(b) if (i, j) != (0, 0)]
    edges += [(0, a + b), (a, a + b)]
    return from_edge_list(a + b + 1, edges)


def c5_partition_order(n: int) -> list[list[int]]:
    """The 3-block partition {V1, {v2,v5}, {v3,v4}} of C5 o (n-4,1,1,1,1) in this labeling."""
    k = n - 4
    return [list(range(k)), [k, k + 3], [k + 1, k + 2]]


def c5_partition_five(n1: int, n2: int, n3: int = 1, n4: int = 1) -> list[list[int]]:
    """The class partition V1, V2, V3, V4, {w} of C5 o (n1, n2, n3, n4, 1)."""
    sizes = (n1, n2, n3, n4, 1)
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    return out


def c5_star_partition(m: int) -> list[list[int]]:
    """{v1,v2}, {v3,v5}, leaves, {v4} for the pendant-star graph."""
    return [[0, 1], [2, 4], list(range(5, m)), [3]]


def is_c5_blowup_form(g: Graph) -> bool:
    """True iff g is C5 o (n1,...,n5) with some class of size 1.

    Twin classes (equal open neighbourhoods) must form exactly five classes whose
    quotient is a 5-cycle.
    """
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(g.rows[v], []).append(v)
    if len(classes) != 5 or min(len(c) for c in classes.values()) != 1:
        return False
    reps = [c[0] for c in classes.values()]
    members = list(classes.values())
    for i, ci in enumerate(members):
        adj = [j for j, cj in enumerate(members) if j != i and g.has_edge(ci[0], cj[0])]
        if len(adj) != 2:
            return False
        # a class is independent and fully joined to each adjacent class
        expect = 0
        for j in adj:
            for v in members[j]:
                expect |= 1 << v
        if g.rows[reps[i]] != expect:
            return False
    quotient = from_edge_list(5, [(i, j) for i in range(5) for j in range(i + 1, 5)
                                  if g.has_edge(members[i][0], members[j][0])])
    return len(quotient.components()) == 1


def family(name: str, params: Sequence[int]) -> Graph:
    """Look up a family by CLI name."""
    builders = {
        "cycle": (cycle, 1),
        "path": (path, 1),
        "star": (star, 1),
        "complete-bipartite": (complete_bipartite, 2),
        "c5-blowup": (c5_blowup, 4),
        "order-extremal": (order_extremal, 1),
        "c5-star": (c5_star, 1),
        "size-extremal": (size_extremal, 1),
        "sk": (subdivided_complete_bipartite, 2),
    }
    if name not in builders:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(sorted(builders))}")
    fn, arity = builders[name]
    if len(params) != arity:
        raise ValueError(f"family {name!r} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)
