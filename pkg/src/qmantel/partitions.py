"""Vertex partitions, quotient matrices and equitable refinement."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph
from .spectral import ConvergenceError, DEFAULT_TOL, q_matrix


@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("partition blocks must be nonempty")
            for v in b:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in more than one block")
                seen.add(v)

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> VertexPartition:
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def unit(cls, n: int) -> VertexPartition:
        return cls((tuple(range(n)),))

    @classmethod
    def discrete(cls, n: int) -> VertexPartition:
        return cls(tuple((v,) for v in range(n)))

    @classmethod
    def parse(cls, text: str) -> VertexPartition:
        """Parse ``"0,1;2,4;3"``: blocks separated by ';', vertices by ','."""
        blocks = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                raise ValueError(f"empty block in partition {text!r}")
            blocks.append(tuple(int(tok) for tok in chunk.split(",")))
        return cls(tuple(blocks))

    def covers(self, n: int) -> bool:
        return sorted(v for b in self.blocks for v in b) == list(range(n))

    def refines(self, other: VertexPartition) -> bool:
        where = {v: i for i, b in enumerate(other.blocks) for v in b}
        return all(len({where[v] for v in b}) == 1 for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return ";".join(",".join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class QuotientMatrix:
    entries: np.ndarray
    exact: tuple[tuple[Fraction, ...], ...] | None
    equitable: bool
    partition: VertexPartition

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


def _is_integral(m: np.ndarray) -> bool:
    return np.issubdtype(m.dtype, np.integer) or bool(np.all(np.mod(m, 1) == 0))


def quotient_matrix(m: np.ndarray, p: VertexPartition) -> QuotientMatrix:
    """b_ij = average row sum of block M_ij; equitable iff every block has constant row sums.

    Integer-valued matrices are handled exactly (Python ints and Fractions).
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("quotient_matrix needs a square matrix")
    if not p.covers(m.shape[0]):
        raise ValueError("partition does not cover the matrix index set exactly")
    k = len(p)
    if _is_integral(m):
        mi = [[int(x) for x in row] for row in m]
        exact = []
        equitable = True
        for bi in p.blocks:
            row_out = []
            for bj in p.blocks:
                sums = [sum(mi[r][c] for c in bj) for r in bi]
                equitable &= len(set(sums)) == 1
                row_out.append(Fraction(sum(sums), len(bi)))
            exact.append(tuple(row_out))
        entries = np.array([[float(x) for x in row] for row in exact])
        return QuotientMatrix(entries, tuple(exact), equitable, p)

    mf = m.astype(float)
    entries = np.zeros((k, k))
    equitable = True
    for i, bi in enumerate(p.blocks):
        for j, bj in enumerate(p.blocks):
            sums = mf[np.ix_(bi, bj)].sum(axis=1)
            entries[i, j] = sums.mean()
            equitable &= bool(np.allclose(sums, sums[0], rtol=0, atol=1e-12 * max(1.0, abs(sums[0]))))
    return QuotientMatrix(entries, None, equitable, p)


def largest_eigenvalue_of_quotient(b: QuotientMatrix | np.ndarray, tol: float = DEFAULT_TOL,
                                   max_iter: int = 100000) -> float:
    """Dominant eigenvalue of a (generally non-symmetric) nonnegative quotient.

    Power iteration on B + sI with s = 1 + max row sum, so the iteration matrix
    is positive on the diagonal.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    mat = b.entries if isinstance(b, QuotientMatrix) else np.asarray(b, dtype=float)
    k = mat.shape[0]
    shift = 1.0 + float(mat.sum(axis=1).max())
    it_mat = mat + shift * np.eye(k)
    x = np.full(k, 1.0 / np.sqrt(k))
    for _ in range(max_iter):
        y = it_mat @ x
        mu = float(x @ y)
        if np.linalg.norm(y - mu * x) <= tol:
            return mu - shift
        x = y / np.linalg.norm(y)
    raise ConvergenceError("quotient power iteration did not converge")


def coarsest_equitable_refinement(g: Graph, p: VertexPartition | None = None) -> VertexPartition:
    """Coarsest equitable partition of Q(G) refining ``p`` (unit partition by default).

    Color refinement: split each block by the vector of neighbour counts into
    every current block until nothing splits. Blocks come out ordered by their
    minimum vertex.
    """
    p = p or VertexPartition.unit(g.n)
    if not p.covers(g.n):
        raise ValueError("partition does not cover the vertex set")
    color = [0] * g.n
    for i, b in enumerate(p.blocks):
        for v in b:
            color[v] = i
    ncolors = len(p.blocks)
    while True:
        sig = {}
        for v in range(g.n):
            counts = [0] * ncolors
            for u in g.neighbors(v):
                counts[color[u]] += 1
            sig[v] = (color[v], tuple(counts))
        # renumber colors by first appearance in vertex order
        ids: dict = {}
        new_color = [ids.setdefault(sig[v], len(ids)) for v in range(g.n)]
        if len(ids) == ncolors:
            break
        color, ncolors = new_color, len(ids)
    blocks: list[list[int]] = [[] for _ in range(ncolors)]
    for v in range(g.n):
        blocks[color[v]].append(v)
    blocks.sort(key=min)
    return VertexPartition.of(blocks)


def graph_quotient(g: Graph, p: VertexPartition | Sequence[Sequence[int]] | None = None) -> QuotientMatrix:
    """Quotient of Q(G); with no partition, the coarsest equitable one."""
    if p is None:
        p = coarsest_equitable_refinement(g)
    elif not isinstance(p, VertexPartition):
        p = VertexPartition.of(p)
    return quotient_matrix(q_matrix(g), p)
