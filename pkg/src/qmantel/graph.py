"""Labeled simple graphs stored as per-vertex bit rows, plus the graph6 codec."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

GRAPH6_MAX_ORDER = 62
GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Raised for malformed or unsupported graph6 input."""


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``rows[v]`` is an int bitmask whose bit ``u`` is set iff ``uv`` is an edge.
    Instances are immutable; equality is labeled equality.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph order must be at least 1")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
                r ^= low

    @classmethod
    def trusted(cls, n: int, rows: tuple[int, ...]) -> Graph:
        # skips validation; for generators that build rows symmetrically
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @property
    def order(self) -> int:
        return self.n

    @property
    def size(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def has_isolated_vertex(self) -> bool:
        return any(row == 0 for row in self.rows)

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted, ordered by minimum vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(_bits(comp))
        return comps

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        """Subgraph on ``vertices``, relabeled ``0..k-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in _bits(self.rows[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in _bits(self.rows[v]):
                row |= 1 << perm[u]
            rows[perm[v]] = row
        return Graph(self.n, tuple(rows))

    def add_edge(self, u: int, v: int) -> Graph:
        _check_pair(self.n, u, v)
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> Graph:
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.size}, g6={to_graph6(self)!r})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check_pair(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertex pair ({u}, {v}) out of range for order {n}")
    if u == v:
        raise ValueError(f"self-loop ({u}, {v}) not allowed")


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 1:
        raise ValueError("graph order must be at least 1")
    rows = [0] * n
    for u, v in edges:
        _check_pair(n, u, v)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


# -- graph6 -----------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_ORDER:
        raise Graph6Error(f"only the short graph6 form is supported (n <= {GRAPH6_MAX_ORDER})")
    bits = []
    for j in range(1, g.n):
        row = g.rows[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise Graph6Error("empty graph6 string")
    codes = [ord(c) for c in s]
    bad = [c for c in codes if not 63 <= c <= 126]
    if bad:
        raise Graph6Error(f"byte {bad[0]} outside the graph6 range [63, 126]")
    n = codes[0] - 63
    if n == 63:
        raise Graph6Error(f"long graph6 form (n > {GRAPH6_MAX_ORDER}) is not supported")
    if n == 0:
        raise Graph6Error("graph6 string encodes an empty vertex set")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = codes[1:]
    if len(body) < nbytes:
        raise Graph6Error(f"graph6 body too short: expected {nbytes} bytes, got {len(body)}")
    if len(body) > nbytes:
        raise Graph6Error(f"trailing characters after graph6 body: {s[1 + nbytes:]!r}")
    bits = []
    for c in body:
        val = c - 63
        bits.extend(val >> k & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits in graph6 body")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Parse newline-delimited graph6, skipping blank lines."""
    for line in lines:
        line = line.strip()
        if line:
            yield parse_graph6(line)


def write_graph6_lines(graphs: Iterable[Graph]) -> str:
    return "".join(to_graph6(g) + "\n" for g in graphs)


# -- structural predicates ----------------------------------------------------


def is_triangle_free(g: Graph) -> bool:
    rows = g.rows
    for u in range(g.n):
        higher = rows[u] >> (u + 1) << (u + 1)
        for v in _bits(higher):
            if rows[u] & rows[v]:
                return False
    return True


def two_coloring(g: Graph) -> list[int] | None:
    """A proper 2-coloring (0/1 per vertex) or None when an odd cycle exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in _bits(g.rows[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def is_connected(g: Graph) -> bool:
    return len(g.components()) == 1


def shortest_odd_cycle_length(g: Graph) -> int | None:
    # An edge joining two vertices on the same BFS level closes an odd walk of
    # length 2*level + 1; rooted at a vertex of a shortest odd cycle it is exact.
    best = None
    for root in range(g.n):
        dist = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for u in _bits(g.rows[v]):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
                elif dist[u] == dist[v]:
                    length = 2 * dist[v] + 1
                    if best is None or length < best:
                        best = length
    return best


def degree_profile(g: Graph) -> DegreeProfile:
    degs = tuple(g.degrees())
    return DegreeProfile(degs, max(degs))


def is_regular(g: Graph) -> bool:
    return len(set(g.degrees())) == 1


def is_semiregular_bipartite(g: Graph) -> bool:
    """Bipartite with a constant degree on each side (per component, same pair throughout).

    Regular bipartite graphs qualify.
    """
    color = two_coloring(g)
    if color is None:
        return False
    degs = g.degrees()
    pairs = set()
    for comp in g.components():
        sides: list[set[int]] = [set(), set()]
        for v in comp:
            sides[color[v]].add(degs[v])
        if len(sides[0]) > 1 or len(sides[1]) > 1:
            return False
        pairs.add(tuple(sorted(d for side in sides for d in side)))
    return len(pairs) == 1
