import math

import numpy as np
import pytest
from hypothesis import given, settings

from oracles import dense_q_index, dense_rho
from strategies import graphs
from qmantel.constructions import c5_star, complete_bipartite, cycle, order_extremal, path, star
from qmantel.graph import Graph, disjoint_union, from_edge_list
from qmantel.spectral import (
    adjacency_spectral_radius,
    avg_neighbor_degree,
    bound_degree_avg_neighbor,
    bound_edge_degree_sum,
    bound_lower_four_m_over_n,
    dominant_eigenpair,
    jacobi_eigh,
    power_iteration,
    q_index,
    q_matrix,
)

TOL = 1e-8


def test_q_matrix_small():
    k2 = from_edge_list(2, [(0, 1)])
    assert q_matrix(k2).tolist() == [[1, 1], [1, 1]]
    c3 = cycle(3)
    assert q_matrix(c3).sum(axis=1).tolist() == [4, 4, 4]
    assert np.array_equal(q_matrix(c3), 2 * np.eye(3, dtype=int) + c3.adjacency_matrix())
    q5 = q_matrix(cycle(5))
    assert np.all(np.diag(q5) == 2)
    assert all(q5[i, (i + 1) % 5] == 1 for i in range(5))
    assert q5.sum() == 20


class TestQIndex:
    def test_examples(self):
        assert q_index(cycle(5)).value == pytest.approx(4.0, abs=TOL)
        assert q_index(star(3)).value == pytest.approx(4.0, abs=TOL)
        assert q_index(cycle(7)).value == pytest.approx(4.0, abs=TOL)
        assert q_index(order_extremal(5)).value == pytest.approx(4.0, abs=TOL)

    @pytest.mark.parametrize("m", range(5, 30))
    def test_star_is_m_minus_two(self, m):
        assert q_index(star(m - 3)).value == pytest.approx(m - 2, abs=TOL)

    @given(graphs(max_n=12))
    @settings(max_examples=200)
    def test_matches_dense_oracle(self, g):
        assert q_index(g).value == pytest.approx(dense_q_index(g), abs=TOL)

    @given(graphs(min_n=2, max_n=12))
    @settings(max_examples=100)
    def test_vector_is_eigenvector(self, g):
        r = q_index(g)
        q = q_matrix(g).astype(float)
        x = r.vector
        assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-9)
        assert np.linalg.norm(q @ x - r.value * x) <= 1e-8
        assert np.all(x >= -1e-9)

    def test_disconnected_takes_max(self):
        g = disjoint_union(cycle(5), star(4))
        assert q_index(g).value == pytest.approx(5.0, abs=TOL)
        r = q_index(g)
        assert np.all(r.vector[:5] == 0)

    def test_edgeless(self):
        assert q_index(Graph(3, (0, 0, 0))).value == 0.0

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            q_index(cycle(5), tol=0)


class TestRho:
    def test_examples(self):
        assert adjacency_spectral_radius(cycle(5)).value == pytest.approx(2.0, abs=TOL)
        for a, b in [(1, 1), (1, 4), (2, 3), (3, 3), (2, 7)]:
            assert adjacency_spectral_radius(complete_bipartite(a, b)).value == pytest.approx(math.sqrt(a * b), abs=TOL)

    def test_c5_equality_case(self):
        assert adjacency_spectral_radius(cycle(5)).value == pytest.approx(math.sqrt(5 - 1), abs=TOL)

    @given(graphs(max_n=12))
    @settings(max_examples=200)
    def test_matches_dense_oracle(self, g):
        assert adjacency_spectral_radius(g).value == pytest.approx(dense_rho(g), abs=TOL)


class TestBounds:
    def test_regular_equalities(self):
        c5 = cycle(5)
        assert bound_edge_degree_sum(c5) == 4
        assert bound_degree_avg_neighbor(c5) == 4
        assert bound_lower_four_m_over_n(c5) == 4
        k13 = star(3)
        assert bound_edge_degree_sum(k13) == 4
        assert q_index(k13).value == pytest.approx(4, abs=TOL)
        assert bound_lower_four_m_over_n(from_edge_list(2, [(0, 1)])) == 2

    @pytest.mark.parametrize("t", range(1, 8))
    def test_star_avg_neighbor(self, t):
        g = star(t)
        assert avg_neighbor_degree(g, 0) == 1
        assert avg_neighbor_degree(g, 1) == t
        assert bound_degree_avg_neighbor(g) == t + 1

    def test_c5_star_strict(self):
        g = c5_star(7)
        q = q_index(g).value
        assert bound_edge_degree_sum(g) == 4 + 2
        assert q < bound_edge_degree_sum(g) - 1e-6
        assert q < bound_degree_avg_neighbor(g) - 1e-6
        assert bound_lower_four_m_over_n(g) == pytest.approx(4 * 7 / 7)

    def test_blowup_w_vertex_at_seven(self):
        # w is the last vertex; its neighbours are V1 (n-4 vertices, degree 2) and v4 (degree 2)
        n = 7
        g = order_extremal(n)
        w = n - 1
        assert g.degree(w) == n - 3
        assert avg_neighbor_degree(g, w) == pytest.approx(2.0)
        assert g.degree(w) + avg_neighbor_degree(g, w) == pytest.approx(n - 1)
        assert q_index(g).value <= bound_degree_avg_neighbor(g) + TOL

    def test_errors(self):
        with pytest.raises(ValueError):
            bound_edge_degree_sum(Graph(2, (0, 0)))
        with pytest.raises(ValueError):
            bound_degree_avg_neighbor(disjoint_union(cycle(5), Graph(1, (0,))))

    @given(graphs(min_n=2, max_n=12, no_isolated=True))
    @settings(max_examples=200)
    def test_sandwich(self, g):
        q = q_index(g).value
        assert bound_lower_four_m_over_n(g) - TOL <= q
        assert q <= min(bound_edge_degree_sum(g), bound_degree_avg_neighbor(g)) + TOL


class TestSolvers:
    @given(graphs(min_n=2, max_n=10))
    @settings(max_examples=50)
    def test_jacobi_matches_numpy(self, g):
        m = q_matrix(g).astype(float)
        vals, vecs = jacobi_eigh(m)
        assert np.allclose(np.sort(vals), np.linalg.eigvalsh(m), atol=1e-9)
        assert np.allclose(m @ vecs, vecs * vals, atol=1e-8)

    def test_power_budget_exhausted_returns_none(self):
        # P4 shifted by a tiny amount converges slowly; one step is never enough
        m = q_matrix(path(4)).astype(float)
        assert power_iteration(m, 1e-14, max_iter=1) is None

    def test_fallback_to_jacobi(self):
        m = q_matrix(path(6)).astype(float)
        r = dominant_eigenpair(m, 1e-10, max_iter=3)
        assert r.method == "jacobi"
        assert r.value == pytest.approx(np.linalg.eigvalsh(m)[-1], abs=1e-9)
