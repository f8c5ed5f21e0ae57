"""Canonical forms and isomorph-free generation of connected triangle-free graphs.

Two generators feed the theorem checks:

* by order: grow connected graphs one vertex at a time, the new vertex joined
  to a nonempty independent set (every connected graph has a non-cut vertex);
* by size: grow one edge at a time, either a pendant vertex or an edge between
  two nonadjacent vertices with no common neighbour (every connected graph with
  at least two edges has a leaf or a non-bridge edge).

Each level is deduplicated by canonical graph6 and sorted, so output does not
depend on the worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from .graph import Graph, is_bipartite, is_connected, is_triangle_free, parse_graph6, to_graph6

ORDER_HARD_CAP = 10
SIZE_HARD_CAP = 12


class CapExceededError(ValueError):
    pass


# -- canonical form -----------------------------------------------------------


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            mk = 0
            for v in cell:
                mk |= 1 << v
            masks.append(mk)
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                r = rows[v]
                groups.setdefault(tuple((r & mk).bit_count() for mk in masks), []).append(v)
            if len(groups) > 1:
                changed = True
                out.extend(groups[k] for k in sorted(groups))
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def _twins(rows: tuple[int, ...], u: int, v: int) -> bool:
    ru, rv = rows[u], rows[v]
    return ru & ~(1 << v) == rv & ~(1 << u)


def canonical_labeling(g: Graph) -> list[int]:
    """Permutation ``perm`` (old vertex -> new label) giving the canonical relabeling.

    Individualization-refinement over the whole search tree; the leaf with the
    lexicographically smallest relabeled row tuple wins. Twins are automorphic
    under a transposition that fixes every individualized vertex, so only one
    twin per cell is branched on.
    """
    rows = g.rows
    n = g.n
    best_code = None
    best_order: list[int] = []

    def leaf(cells: list[list[int]]) -> None:
        nonlocal best_code, best_order
        order = [c[0] for c in cells]
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        code = []
        for v in order:
            r = rows[v]
            nr = 0
            while r:
                low = r & -r
                nr |= 1 << pos[low.bit_length() - 1]
                r ^= low
            code.append(nr)
        code = tuple(code)
        if best_code is None or code < best_code:
            best_code, best_order = code, order

    def search(cells: list[list[int]]) -> None:
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            leaf(cells)
            return
        cell = cells[idx]
        tried: list[int] = []
        for v in cell:
            if any(_twins(rows, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(_refine(rows, cells[:idx] + [[v], rest] + cells[idx + 1:]))

    search(_refine(rows, [list(range(n))]))
    perm = [0] * n
    for i, v in enumerate(best_order):
        perm[v] = i
    return perm


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_form(g: Graph) -> str:
    """graph6 of the canonical relabeling; equal for isomorphic graphs only."""
    return to_graph6(canonical_graph(g))


def canonical_form_bruteforce(g: Graph) -> str:
    """Minimum graph6 string over all n! relabelings. Exponential; small n only."""
    return min(to_graph6(g.relabel(p)) for p in itertools.permutations(range(g.n)))


# -- children -----------------------------------------------------------------


def independent_sets(g: Graph, nonempty: bool = True) -> list[int]:
    """All independent vertex sets as bitmasks."""
    rows = g.rows
    out: list[int] = []

    def rec(v: int, mask: int, banned: int) -> None:
        if v == g.n:
            out.append(mask)
            return
        rec(v + 1, mask, banned)
        if not banned >> v & 1:
            rec(v + 1, mask | 1 << v, banned | rows[v])

    rec(0, 0, 0)
    return [s for s in out if s] if nonempty else out


def vertex_children(g: Graph) -> Iterator[Graph]:
    n = g.n
    for s in independent_sets(g):
        rows = list(g.rows)
        r = s
        while r:
            low = r & -r
            rows[low.bit_length() - 1] |= 1 << n
            r ^= low
        rows.append(s)
        yield Graph.trusted(n + 1, tuple(rows))


def edge_children(g: Graph) -> Iterator[Graph]:
    n, rows = g.n, g.rows
    for v in range(n):
        new = list(rows)
        new[v] |= 1 << n
        new.append(1 << v)
        yield Graph.trusted(n + 1, tuple(new))
    for u in range(n):
        for v in range(u + 1, n):
            if rows[u] >> v & 1 or rows[u] & rows[v]:
                continue
            new = list(rows)
            new[u] |= 1 << v
            new[v] |= 1 << u
            yield Graph.trusted(n, tuple(new))


def _expand(args: tuple[str, list[str]]) -> list[str]:
    kind, parents = args
    children = vertex_children if kind == "vertex" else edge_children
    seen = set()
    for code in parents:
        for child in children(parse_graph6(code)):
            seen.add(canonical_form(child))
    return sorted(seen)


def _expand_level(kind: str, parents: list[str], workers: int) -> set[str]:
    if workers <= 1 or len(parents) < 2 * workers:
        return set(_expand((kind, parents)))
    chunks = [parents[i::workers] for i in range(workers)]
    out: set[str] = set()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_expand, [(kind, c) for c in chunks]):
            out.update(part)
    return out


# -- catalogs -----------------------------------------------------------------


_order_levels: list[list[str]] = [[], [to_graph6(Graph(1, (0,)))]]


def catalog_by_order(n: int, workers: int = 1, cap: int = ORDER_HARD_CAP) -> list[str]:
    """Canonical graph6 of every connected triangle-free graph of order n, sorted."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > cap:
        raise CapExceededError(f"order {n} exceeds cap {cap}")
    while len(_order_levels) <= n:
        parents = _order_levels[-1]
        _order_levels.append(sorted(_expand_level("vertex", parents, workers)))
    return list(_order_levels[n])


_size_levels: dict[bool, dict[int, list[str]]] = {False: {}, True: {}}


def catalog_by_size(m: int, non_bipartite_only: bool = False, workers: int = 1,
                    cap: int = SIZE_HARD_CAP) -> list[str]:
    """Canonical graph6 of every connected triangle-free graph with m edges, sorted.

    With ``non_bipartite_only`` the search stays inside non-bipartite graphs,
    seeded by the odd cycles: a non-bipartite connected graph other than an odd
    cycle has a leaf or a non-bridge edge off a shortest odd cycle.
    """
    if m < 1:
        raise ValueError("size must be positive")
    if m > cap:
        raise CapExceededError(f"size {m} exceeds cap {cap}")
    levels = _size_levels[non_bipartite_only]
    if m in levels:
        return list(levels[m])
    if non_bipartite_only:
        if m < 5:
            levels[m] = []
            return []
        prev = catalog_by_size(m - 1, True, workers, cap) if m > 5 else []
        found = _expand_level("edge", prev, workers)
        if m % 2 == 1:
            found.add(canonical_form(_cycle_graph(m)))
    else:
        if m == 1:
            found = {to_graph6(Graph(2, (2, 1)))}
        else:
            found = _expand_level("edge", catalog_by_size(m - 1, False, workers, cap), workers)
    levels[m] = sorted(found)
    return list(levels[m])


def clear_caches() -> None:
    """Drop memoized catalog levels (they do not depend on the worker count)."""
    del _order_levels[2:]
    _size_levels[False].clear()
    _size_levels[True].clear()


def _cycle_graph(k: int) -> Graph:
    rows = tuple((1 << ((i + 1) % k)) | (1 << ((i - 1) % k)) for i in range(k))
    return Graph(k, rows)


def enumerate_connected_triangle_free(order: int | None = None, size: int | None = None,
                                      non_bipartite_only: bool = False,
                                      workers: int = 1) -> Iterator[Graph]:
    """Yield each connected triangle-free graph of the given order or size once up to isomorphism."""
    if (order is None) == (size is None):
        raise ValueError("give exactly one of order or size")
    if order is not None:
        codes = catalog_by_order(order, workers)
    else:
        codes = catalog_by_size(size, non_bipartite_only, workers)
    for code in codes:
        g = parse_graph6(code)
        if non_bipartite_only and is_bipartite(g):
            continue
        yield g


# -- labeled brute force (oracle) ----------------------------------------------


def labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^C(n,2) labeled graphs on n vertices."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for bits in range(1 << len(pairs)):
        rows = [0] * n
        k = 0
        b = bits
        while b:
            if b & 1:
                i, j = pairs[k]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            b >>= 1
            k += 1
        yield Graph.trusted(n, tuple(rows))


def bruteforce_connected_triangle_free(n: int, canon=canonical_form_bruteforce) -> set[str]:
    """Isomorphism classes of connected triangle-free graphs on n vertices by labeled brute force."""
    return {canon(g) for g in labeled_graphs(n) if is_triangle_free(g) and is_connected(g)}


def labeled_triangle_free_levels(n: int) -> Iterable[list[Graph]]:
    """Labeled triangle-free graphs on 1..n vertices, level by level.

    Every labeled graph on k vertices is a graph on the first k-1 vertices plus
    a neighbourhood for vertex k-1; it is triangle-free iff the former is and
    the neighbourhood is independent. So this is exhaustive over labeled graphs.
    """
    level = [Graph(1, (0,))]
    yield level
    for _ in range(2, n + 1):
        nxt = []
        for g in level:
            for s in independent_sets(g, nonempty=False):
                rows = list(g.rows)
                r = s
                while r:
                    low = r & -r
                    rows[low.bit_length() - 1] |= 1 << g.n
                    r ^= low
                rows.append(s)
                nxt.append(Graph.trusted(g.n + 1, tuple(rows)))
        level = nxt
        yield level
