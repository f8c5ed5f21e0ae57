import math
import random

import pytest

from qmantel import verify as vf
from qmantel.constructions import (
    c5_star,
    cycle,
    order_extremal,
    path,
    subdivided_complete_bipartite,
)
from qmantel.enumeration import CapExceededError, canonical_form, labeled_graphs
from qmantel.graph import is_bipartite, is_triangle_free
from qmantel.spectral import q_index


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_order_theorem(n):
    r = vf.verify_order_theorem(n)
    assert r.matched
    assert r.maximizers == [canonical_form(order_extremal(n))]
    assert r.max_q == pytest.approx(q_index(order_extremal(n)).value, abs=1e-8)


def test_order_five_is_c5_with_q_four():
    r = vf.verify_order_theorem(5)
    assert r.count_examined == 1
    assert r.maximizers == [canonical_form(cycle(5))]
    assert r.max_q == pytest.approx(4.0, abs=1e-8)


@pytest.mark.parametrize("m", [5, 6, 7, 8, 9])
def test_size_theorem(m):
    r = vf.verify_size_theorem(m)
    assert r.matched
    expected = cycle(5) if m == 5 else c5_star(m)
    assert r.maximizers == [canonical_form(expected)]


def test_size_six_candidates():
    assert vf.verify_size_theorem(6).count_examined == 2  # C5 plus a pendant edge, or plus a disjoint K2


def test_size_seven_beats_c7():
    cands = vf.size_candidates(7)
    codes = {canonical_form(c.graph()): c.value for c in cands}
    assert codes[canonical_form(cycle(7))] == pytest.approx(4.0, abs=1e-8)
    assert max(codes.values()) == pytest.approx(q_index(c5_star(7)).value, abs=1e-8)


def test_candidates_are_valid():
    for c in vf.order_candidates(7):
        g = c.graph()
        assert g.n == 7 and not g.has_isolated_vertex()
        assert is_triangle_free(g) and not is_bipartite(g)
    for c in vf.size_candidates(8):
        g = c.graph()
        assert g.size == 8 and not g.has_isolated_vertex()
        assert is_triangle_free(g) and not is_bipartite(g)


def test_domain_and_caps():
    with pytest.raises(ValueError):
        vf.verify_order_theorem(4)
    with pytest.raises(ValueError):
        vf.verify_size_theorem(4)
    with pytest.raises(CapExceededError):
        vf.verify_order_theorem(10)
    with pytest.raises(CapExceededError):
        vf.verify_size_theorem(12)
    with pytest.raises(CapExceededError):
        vf.verify_order_theorem(6, cap=99)


def test_mismatch_is_reported():
    r = vf.verify_order_theorem(6, tol=1e-8)
    bad = vf._report(r.constraint, vf.order_candidates(6), cycle(5), 4.0, 1e-8)
    assert bad.verdict == "mismatch" and not bad.matched


class TestMantelErdos:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_mantel(self, n):
        assert vf.mantel_max_triangle_free_size(n) == n * n // 4
        assert vf.verify_mantel(n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_mantel_matches_literal_bruteforce(self, n):
        literal = max(g.size for g in labeled_graphs(n) if is_triangle_free(g))
        assert vf.mantel_max_triangle_free_size(n) == literal

    def test_mantel_four_five_edges(self):
        assert all(not is_triangle_free(g) for g in labeled_graphs(4) if g.size >= 5)

    def test_mantel_cap(self):
        with pytest.raises(CapExceededError):
            vf.verify_mantel(9)

    def test_erdos(self):
        assert vf.erdos_max_size(5) == 5
        assert [vf.erdos_max_size(n) for n in range(5, 9)] == [5, 7, 10, 13]
        for n in range(5, 9):
            assert vf.verify_erdos(n)


class TestRotation:
    def test_path_example(self):
        # P4: the two inner vertices are automorphic, a degenerate tie
        x = q_index(path(4)).vector
        assert x[1] == pytest.approx(x[2])
        # P5: the centre beats its neighbour, so moving leaf 0 from 1 to 2 raises q
        g = path(5)
        x = q_index(g).vector
        assert x[2] > x[1]
        rotated = g.remove_edge(0, 1).add_edge(0, 2)
        assert q_index(rotated).value > q_index(g).value + 1e-10

    def test_trials(self):
        trials = vf.rotation_trials(100, seed=3)
        assert len(trials) == 100
        assert all(t.gain > 1e-10 for t in trials)
        assert vf.verify_rotation_lemma(100, seed=3) == 100

    def test_deterministic(self):
        assert vf.rotation_trials(30, seed=11) == vf.rotation_trials(30, seed=11)
        assert vf.rotation_trials(30, seed=11) != vf.rotation_trials(30, seed=12)

    def test_bad_trials(self):
        with pytest.raises(ValueError):
            vf.rotation_trials(0, seed=0)


class TestAdjacency:
    def test_threshold_c5(self):
        r = vf.verify_adjacency_threshold(5)
        assert r.matched and r.maximizers == [canonical_form(cycle(5))]
        assert r.max_q == pytest.approx(2.0, abs=1e-8) == math.sqrt(4)

    @pytest.mark.parametrize("m", [6, 7, 8])
    def test_threshold_empty(self, m):
        r = vf.verify_adjacency_threshold(m)
        assert r.matched and r.maximizers == []
        assert r.max_q < math.sqrt(m - 1)

    def test_order_seven_sk33(self):
        r = vf.verify_adjacency_order(7)
        assert r.matched
        assert r.maximizers == [canonical_form(subdivided_complete_bipartite(3, 3))]

    def test_size_nine_sk24(self):
        r = vf.verify_adjacency_size(9)
        assert r.matched
        assert r.maximizers == [canonical_form(subdivided_complete_bipartite(2, 4))]

    def test_size_needs_odd(self):
        with pytest.raises(ValueError):
            vf.verify_adjacency_size(8)

    def test_bundle(self):
        reports = vf.verify_adjacency_theorems(7, 7)
        assert [r.constraint.label() for r in reports] == [
            "order:rho:n=5", "order:rho:n=6", "order:rho:n=7",
            "size:rho-threshold:m=5", "size:rho-threshold:m=6", "size:rho-threshold:m=7",
            "size:rho:m=5", "size:rho:m=7",
        ]
        assert all(r.matched for r in reports)


def test_report_dict_rounding():
    d = vf.verify_order_theorem(6).to_dict()
    assert d["constraint"]["mode"] == "order"
    assert d["max_q"] == float(f"{d['max_q']:.12g}")
    assert d["verdict"] == "match"


def test_random_graph_helpers():
    rng = random.Random(0)
    for _ in range(50):
        g = vf.random_connected_graph(rng)
        assert 4 <= g.n <= 12 and len(g.components()) == 1
        h = vf.random_graph_without_isolated(rng)
        assert not h.has_isolated_vertex()
