"""Exhaustive desk-scale checks of the Q-spectral and adjacency-spectral Mantel theorems."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import enumeration
from .constructions import cycle, order_extremal, size_extremal, subdivided_complete_bipartite
from .enumeration import (
    CapExceededError,
    ORDER_HARD_CAP,
    SIZE_HARD_CAP,
    canonical_form,
    catalog_by_order,
    catalog_by_size,
    labeled_triangle_free_levels,
    independent_sets,
)
from .graph import Graph, disjoint_union, is_bipartite, is_connected, parse_graph6
from .polynomials import cubic_largest_root, quartic_largest_root
from .spectral import adjacency_spectral_radius, q_index

DEFAULT_COMPARE_TOL = 1e-8
DEFAULT_ORDER_CAP = 9
DEFAULT_SIZE_CAP = 11
RANDOM_DENSITIES = (0.3, 0.5, 0.7)


@dataclass(frozen=True)
class EnumerationConstraint:
    mode: str  # "order" or "size"
    value: int
    objective: str = "q"  # "q", "rho" or "rho-threshold"
    require_triangle_free: bool = True
    require_non_bipartite: bool = True
    require_connected: bool = False
    allow_disconnected_composition: bool = True

    def __post_init__(self) -> None:
        if self.mode not in ("order", "size"):
            raise ValueError(f"unknown enumeration mode {self.mode!r}")

    def label(self) -> str:
        key = "n" if self.mode == "order" else "m"
        return f"{self.mode}:{self.objective}:{key}={self.value}"


@dataclass
class SearchReport:
    constraint: EnumerationConstraint
    count_examined: int
    maximizers: list[str]
    max_q: float
    predicted_graph: str | None
    predicted_q: float
    verdict: str
    tolerance: float = DEFAULT_COMPARE_TOL

    @property
    def matched(self) -> bool:
        return self.verdict == "match"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["max_q"] = _round12(self.max_q)
        d["predicted_q"] = _round12(self.predicted_q)
        return d


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


# -- candidate families ---------------------------------------------------------


@dataclass(frozen=True)
class _Item:
    code: str
    weight: int
    non_bipartite: bool


@dataclass
class _Candidate:
    parts: tuple[str, ...]
    value: float
    graph_size: int = 0

    def graph(self) -> Graph:
        return disjoint_union(*(parse_graph6(c) for c in self.parts))


def _multisets(items: list[_Item], total: int) -> Iterator[tuple[_Item, ...]]:
    """Multisets of items (repetition allowed) whose weights sum to ``total`` with at least one non-bipartite item."""

    def rec(start: int, remaining: int, chosen: list[_Item]) -> Iterator[tuple[_Item, ...]]:
        if remaining == 0:
            if any(it.non_bipartite for it in chosen):
                yield tuple(chosen)
            return
        for i in range(start, len(items)):
            it = items[i]
            if it.weight > remaining:
                continue
            chosen.append(it)
            yield from rec(i, remaining - it.weight, chosen)
            chosen.pop()

    yield from rec(0, total, [])


_value_cache: dict[tuple[str, str], float] = {}


def _objective(code: str, objective: str) -> float:
    key = (code, objective)
    if key not in _value_cache:
        g = parse_graph6(code)
        fn = q_index if objective == "q" else adjacency_spectral_radius
        _value_cache[key] = fn(g).value
    return _value_cache[key]


def clear_caches() -> None:
    _value_cache.clear()
    enumeration.clear_caches()


def order_candidates(n: int, objective: str = "q", workers: int = 1,
                     cap: int = DEFAULT_ORDER_CAP) -> list[_Candidate]:
    """All non-bipartite triangle-free graphs of order n without isolated vertices, up to isomorphism.

    Built as multisets of connected components of order >= 2; the objective of a
    union is the maximum over its components.
    """
    _check_cap("order", n, cap, ORDER_HARD_CAP)
    items = []
    for k in range(2, n + 1):
        for code in catalog_by_order(k, workers, cap=ORDER_HARD_CAP):
            items.append(_Item(code, k, not is_bipartite(parse_graph6(code))))
    return _evaluate(items, n, objective)


def size_candidates(m: int, objective: str = "q", workers: int = 1,
                    cap: int = DEFAULT_SIZE_CAP) -> list[_Candidate]:
    """All non-bipartite triangle-free graphs with m edges and no isolated vertices, up to isomorphism.

    A component with more than m - 5 edges must itself be the non-bipartite one
    (every odd cycle here has at least 5 edges), so bipartite components are only
    needed up to m - 5 edges.
    """
    _check_cap("size", m, cap, SIZE_HARD_CAP)
    items = []
    for e in range(1, m + 1):
        for code in catalog_by_size(e, True, workers, cap=SIZE_HARD_CAP):
            items.append(_Item(code, e, True))
        if e <= m - 5:
            for code in catalog_by_size(e, False, workers, cap=SIZE_HARD_CAP):
                if is_bipartite(parse_graph6(code)):
                    items.append(_Item(code, e, False))
    items.sort(key=lambda it: (it.weight, it.code))
    return _evaluate(items, m, objective)


def _evaluate(items: list[_Item], total: int, objective: str) -> list[_Candidate]:
    out = []
    for combo in _multisets(items, total):
        parts = tuple(it.code for it in combo)
        value = max(_objective(c, objective) for c in parts)
        size = sum(parse_graph6(c).size for c in parts)
        out.append(_Candidate(parts, value, size))
    return out


def _check_cap(mode: str, value: int, cap: int, hard: int) -> None:
    if cap > hard:
        raise CapExceededError(f"{mode} cap {cap} exceeds the hard limit {hard}")
    if value > cap:
        raise CapExceededError(f"{mode} {value} exceeds cap {cap}")


def _maximizers(cands: list[_Candidate], tol: float) -> tuple[float, list[str]]:
    best = max(c.value for c in cands)
    tops = sorted({canonical_form(c.graph()) for c in cands if c.value >= best - tol})
    return best, tops


def _report(constraint: EnumerationConstraint, cands: list[_Candidate], predicted: Graph,
            predicted_q: float, tol: float) -> SearchReport:
    best, tops = _maximizers(cands, tol)
    pred_code = canonical_form(predicted)
    ok = tops == [pred_code] and abs(best - predicted_q) <= tol
    return SearchReport(constraint, len(cands), tops, best, pred_code, predicted_q,
                        "match" if ok else "mismatch", tol)


# -- theorem checks -------------------------------------------------------------


def verify_order_theorem(n: int, tol: float = DEFAULT_COMPARE_TOL, workers: int = 1,
                         cap: int = DEFAULT_ORDER_CAP) -> SearchReport:
    """Maximum Q-index over non-bipartite triangle-free graphs of order n.

    Expected: unique maximizer C5 o (n-4,1,1,1,1) with q equal to the largest
    root of x^3 - (n+2)x^2 + (3n-2)x - 4.
    """
    if n < 5:
        raise ValueError("no non-bipartite triangle-free graph has fewer than 5 vertices")
    cands = order_candidates(n, "q", workers, cap)
    return _report(EnumerationConstraint("order", n), cands, order_extremal(n), cubic_largest_root(n), tol)


def verify_size_theorem(m: int, tol: float = DEFAULT_COMPARE_TOL, workers: int = 1,
                        cap: int = DEFAULT_SIZE_CAP) -> SearchReport:
    """Maximum Q-index over non-bipartite triangle-free graphs with m edges.

    Expected: C5 for m = 5, C5 with a pendant K_{1,m-5} for m >= 6, with q the
    largest root of x^4 - (m+3)x^3 + (5m-5)x^2 + (8-5m)x + 4.
    """
    if m < 5:
        raise ValueError("no non-bipartite triangle-free graph has fewer than 5 edges")
    cands = size_candidates(m, "q", workers, cap)
    return _report(EnumerationConstraint("size", m), cands, size_extremal(m), quartic_largest_root(m), tol)


def mantel_max_triangle_free_size(n: int) -> int:
    """Largest size of a labeled triangle-free graph on n vertices, exhaustively.

    The last vertex's neighbourhood ranges over the independent sets of every
    labeled triangle-free graph on n-1 vertices, so the answer is the maximum of
    size + independence number over that level.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 0
    best = 0
    for level in labeled_triangle_free_levels(n - 1):
        prev = level
    for g in prev:
        alpha = max(s.bit_count() for s in independent_sets(g, nonempty=False))
        best = max(best, g.size + alpha)
    return best


def verify_mantel(n: int, cap: int = 8) -> bool:
    """Every graph on n vertices with more than floor(n^2/4) edges contains a triangle."""
    if n > cap:
        raise CapExceededError(f"Mantel check limited to n <= {cap}")
    return mantel_max_triangle_free_size(n) <= n * n // 4


def erdos_max_size(n: int, workers: int = 1, cap: int = DEFAULT_ORDER_CAP) -> int:
    """Largest size of a non-bipartite triangle-free graph of order n (no isolated vertices)."""
    cands = order_candidates(n, "q", workers, cap) if n >= 5 else []
    return max((c.graph_size for c in cands), default=0)


def verify_erdos(n: int, workers: int = 1, cap: int = DEFAULT_ORDER_CAP) -> bool:
    """Every non-bipartite triangle-free graph of order n has m <= (n-1)^2/4 + 1."""
    return Fraction(erdos_max_size(n, workers, cap)) <= Fraction((n - 1) ** 2, 4) + 1


# -- randomized checks ----------------------------------------------------------


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    rows = [0] * n
    for j in range(1, n):
        for i in range(j):
            if rng.random() < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def random_connected_graph(rng: random.Random, n_min: int = 4, n_max: int = 12) -> Graph:
    """Erdos-Renyi with p drawn from {0.3, 0.5, 0.7}, conditioned on connectivity by rejection."""
    while True:
        g = random_graph(rng, rng.randint(n_min, n_max), rng.choice(RANDOM_DENSITIES))
        if is_connected(g):
            return g


def random_graph_without_isolated(rng: random.Random, n_min: int = 2, n_max: int = 12) -> Graph:
    while True:
        g = random_graph(rng, rng.randint(n_min, n_max), rng.choice(RANDOM_DENSITIES))
        if not g.has_isolated_vertex():
            return g


@dataclass
class RotationTrial:
    graph: str
    v: int
    u1: int
    u2: int
    q_before: float
    q_after: float

    @property
    def gain(self) -> float:
        return self.q_after - self.q_before


def rotation_trials(trials: int, seed: int, tie_margin: float = 1e-9) -> list[RotationTrial]:
    """Sample connected graphs and edge rotations u2v -> u1v with x_{u1} >= x_{u2}.

    Triples whose Perron entries agree within ``tie_margin`` are not sampled;
    at that distance float noise could flip the comparison. Graphs without a
    valid triple are redrawn.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    out = []
    while len(out) < trials:
        g = random_connected_graph(rng)
        res = q_index(g, tol=1e-12)
        x = res.vector
        triples = [
            (v, u1, u2)
            for v in range(g.n)
            for u2 in g.neighbors(v)
            for u1 in range(g.n)
            if u1 != v and not g.has_edge(u1, v) and x[u1] >= x[u2] + tie_margin
        ]
        if not triples:
            continue
        v, u1, u2 = rng.choice(triples)
        rotated = g.remove_edge(u2, v).add_edge(u1, v)
        out.append(RotationTrial(canonical_form(g), v, u1, u2, res.value, q_index(rotated, tol=1e-12).value))
    return out


def verify_rotation_lemma(trials: int, seed: int, min_gain: float = 1e-10) -> int:
    """Number of trials in which the rotation strictly raised q by more than ``min_gain``."""
    return sum(t.gain > min_gain for t in rotation_trials(trials, seed))


# -- adjacency-spectral cross-checks ------------------------------------------


def verify_adjacency_order(n: int, tol: float = DEFAULT_COMPARE_TOL, workers: int = 1,
                           cap: int = DEFAULT_ORDER_CAP) -> SearchReport:
    """Maximum adjacency spectral radius at order n; expected SK_{floor((n-1)/2), ceil((n-1)/2)}."""
    pred = subdivided_complete_bipartite((n - 1) // 2, n // 2)
    cands = order_candidates(n, "rho", workers, cap)
    return _report(EnumerationConstraint("order", n, "rho"), cands, pred,
                   adjacency_spectral_radius(pred).value, tol)


def verify_adjacency_size(m: int, tol: float = DEFAULT_COMPARE_TOL, workers: int = 1,
                          cap: int = DEFAULT_SIZE_CAP) -> SearchReport:
    """Maximum adjacency spectral radius at odd size m; expected SK_{2,(m-1)/2}."""
    if m % 2 == 0:
        raise ValueError("the size version applies to odd m")
    pred = subdivided_complete_bipartite(2, (m - 1) // 2)
    cands = size_candidates(m, "rho", workers, cap)
    return _report(EnumerationConstraint("size", m, "rho"), cands, pred,
                   adjacency_spectral_radius(pred).value, tol)


def verify_adjacency_threshold(m: int, tol: float = DEFAULT_COMPARE_TOL, workers: int = 1,
                               cap: int = DEFAULT_SIZE_CAP) -> SearchReport:
    """Graphs of size m with rho >= sqrt(m-1): expected exactly C5 at m = 5 and none otherwise.

    ``maximizers`` lists the graphs reaching the threshold (within tol).
    """
    cands = size_candidates(m, "rho", workers, cap)
    threshold = math.sqrt(m - 1)
    attain = sorted({canonical_form(c.graph()) for c in cands if c.value >= threshold - tol})
    best = max(c.value for c in cands)
    expected = [canonical_form(cycle(5))] if m == 5 else []
    ok = attain == expected
    return SearchReport(EnumerationConstraint("size", m, "rho-threshold"), len(cands), attain, best,
                        expected[0] if expected else None, threshold, "match" if ok else "mismatch", tol)


def verify_adjacency_theorems(n_max: int, m_max: int, tol: float = DEFAULT_COMPARE_TOL,
                              workers: int = 1, m_threshold_max: int | None = None,
                              order_cap: int = DEFAULT_ORDER_CAP,
                              size_cap: int = DEFAULT_SIZE_CAP) -> list[SearchReport]:
    """Order version for 5..n_max, threshold version for 5..m_threshold_max (default m_max), size version for odd 5..m_max."""
    reports = [verify_adjacency_order(n, tol, workers, order_cap) for n in range(5, n_max + 1)]
    top = m_max if m_threshold_max is None else m_threshold_max
    reports += [verify_adjacency_threshold(m, tol, workers, size_cap) for m in range(5, top + 1)]
    reports += [verify_adjacency_size(m, tol, workers, size_cap) for m in range(5, m_max + 1, 2)]
    return reports


def run_reports(fn: Callable[..., SearchReport], values: Sequence[int], **kwargs) -> list[SearchReport]:
    return [fn(v, **kwargs) for v in values]
