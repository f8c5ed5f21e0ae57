"""Q-matrix, Q-index, adjacency spectral radius and the classical Q-index bounds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

DEFAULT_TOL = 1e-10
POWER_MAX_ITER = 20000


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralResult:
    value: float
    vector: np.ndarray
    residual: float
    iterations: int
    method: str = "power"


def q_matrix(g: Graph) -> np.ndarray:
    """Signless Laplacian D + A as an integer array."""
    q = g.adjacency_matrix()
    q[np.diag_indices(g.n)] = g.degrees()
    return q


def power_iteration(m: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = POWER_MAX_ITER):
    """Dominant eigenpair of a symmetric nonnegative matrix.

    Starts from the normalized all-ones vector and stops once
    ``||M x - (x.Mx) x|| <= tol``. Returns ``(value, vector, residual, iterations)``
    or None if the budget runs out.
    """
    k = m.shape[0]
    x = np.full(k, 1.0 / np.sqrt(k))
    for it in range(1, max_iter + 1):
        y = m @ x
        lam = float(x @ y)
        res = float(np.linalg.norm(y - lam * x))
        if res <= tol:
            return lam, x, res, it
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0, x, 0.0, it
        x = y / norm
    return None


def jacobi_eigh(m: np.ndarray, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations on a dense symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns, unsorted.
    """
    a = np.array(m, dtype=float)
    k = a.shape[0]
    v = np.eye(k)
    scale = max(np.linalg.norm(a), 1.0)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= 1e-15 * scale:
            return np.diag(a).copy(), v
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    # theta^2 would overflow; t ~ 1/(2 theta)
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def dominant_eigenpair(m: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = POWER_MAX_ITER) -> SpectralResult:
    """Power iteration with a Jacobi fallback when the iteration stalls."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    mf = np.asarray(m, dtype=float)
    found = power_iteration(mf, tol, max_iter)
    if found is not None:
        lam, x, res, it = found
        method = "power"
    else:
        vals, vecs = jacobi_eigh(mf)
        i = int(np.argmax(vals))
        x = vecs[:, i]
        lam = float(x @ mf @ x)
        res = float(np.linalg.norm(mf @ x - lam * x))
        it = max_iter
        method = "jacobi"
    # Perron vector convention: nonnegative orientation
    if x.sum() < 0:
        x = -x
    return SpectralResult(lam, x, res, it, method)


def _per_component(g: Graph, matrix: np.ndarray, shift: float, tol: float) -> SpectralResult:
    best = None
    best_comp: list[int] = []
    for comp in g.components():
        if len(comp) == 1:
            sub = SpectralResult(float(matrix[comp[0], comp[0]]), np.ones(1), 0.0, 0)
        else:
            idx = np.array(comp)
            block = matrix[np.ix_(idx, idx)].astype(float) + shift * np.eye(len(comp))
            r = dominant_eigenpair(block, tol)
            sub = SpectralResult(r.value - shift, r.vector, r.residual, r.iterations, r.method)
        if best is None or sub.value > best.value:
            best, best_comp = sub, comp
    vec = np.zeros(g.n)
    vec[best_comp] = best.vector
    return SpectralResult(best.value, vec, best.residual, best.iterations, best.method)


def q_index(g: Graph, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Largest eigenvalue of Q(G); the maximum over components when disconnected.

    For connected graphs the returned vector is the Perron vector of Q(G). For
    disconnected graphs it is the Perron vector of the maximizing component padded
    with zeros.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _per_component(g, q_matrix(g), 0.0, tol)


def adjacency_spectral_radius(g: Graph, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Largest eigenvalue of A(G).

    Iterates on A + I so bipartite components (spectrum symmetric about 0) still
    have a strictly dominant eigenvalue.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _per_component(g, g.adjacency_matrix(), 1.0, tol)


def bound_edge_degree_sum(g: Graph) -> int:
    """max over edges uv of d(u) + d(v)."""
    edges = g.edges()
    if not edges:
        raise ValueError("edge-degree-sum bound needs at least one edge")
    d = g.degrees()
    return max(d[u] + d[v] for u, v in edges)


def avg_neighbor_degree(g: Graph, u: int) -> float:
    """m(u): mean degree over the neighbours of u."""
    nbrs = g.neighbors(u)
    if not nbrs:
        raise ValueError(f"vertex {u} is isolated; m(u) is undefined")
    return sum(g.degree(v) for v in nbrs) / len(nbrs)


def bound_degree_avg_neighbor(g: Graph) -> float:
    """max over vertices of d(u) + m(u)."""
    if g.has_isolated_vertex():
        raise ValueError("degree/average-neighbour bound undefined with isolated vertices")
    return max(g.degree(u) + avg_neighbor_degree(g, u) for u in range(g.n))


def bound_lower_four_m_over_n(g: Graph) -> float:
    return 4 * g.size / g.n
