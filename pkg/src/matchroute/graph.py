"""Regular graphs: construction, generators, spectral estimation and audits.

Vertices are always the dense ids ``0..n-1`` and edges are stored as
canonical pairs ``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import (
    Disconnected,
    GraphError,
    InfeasibleDegree,
    NotRegular,
    NotSimple,
    RetriesExhausted,
)

Edge = tuple[int, int]


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``d`` is the common degree; it is ``None`` only for the irregular test
    fixtures admitted by :func:`matchroute.oracle.fixture_graph`.
    """

    n: int
    d: int | None
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]

    def __repr__(self):
        return f"Graph(n={self.n}, d={self.d}, m={len(self.edges)})"

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical(u, v) in self.edge_set

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    @cached_property
    def neighbor_array(self) -> np.ndarray:
        """``(n, d)`` array of sorted neighbours; regular graphs only."""
        if self.d is None:
            raise NotRegular("neighbor_array needs a regular graph")
        return np.array(self.adjacency, dtype=np.int64).reshape(self.n, self.d)

    @cached_property
    def csr(self) -> csr_matrix:
        if not self.edges:
            return csr_matrix((self.n, self.n), dtype=np.int8)
        e = np.array(self.edges, dtype=np.int64)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        count, _ = connected_components(self.csr, directed=False)
        return count == 1


def _build(n: int, edges: Iterable[Edge], *, regular: bool, connected: bool) -> Graph:
    if n < 1:
        raise GraphError(f"vertex count must be positive, got {n}")
    seen = set()
    adj: list[list[int]] = [[] for _ in range(n)]
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {u}-{v} out of range for n={n}")
        if u == v:
            raise NotSimple(f"loop at vertex {u}")
        e = canonical(u, v)
        if e in seen:
            raise NotSimple(f"duplicate edge {e[0]}-{e[1]}")
        seen.add(e)
        adj[u].append(v)
        adj[v].append(u)
    degrees = {len(a) for a in adj}
    d = degrees.pop() if len(degrees) == 1 else None
    if regular and d is None:
        lo, hi = min(len(a) for a in adj), max(len(a) for a in adj)
        raise NotRegular(f"degrees range over [{lo}, {hi}]")
    g = Graph(
        n=n,
        d=d,
        adjacency=tuple(tuple(sorted(a)) for a in adj),
        edges=tuple(sorted(seen)),
    )
    if connected and not g.is_connected():
        raise Disconnected("graph is not connected")
    return g


def from_edge_list(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a validated simple, connected, regular graph.

    Raises
    ------
    NotSimple
        On a loop or a repeated edge.
    NotRegular
        If vertex degrees differ.
    Disconnected
        If the graph has more than one component.
    """
    return _build(n, edges, regular=True, connected=True)


# generators


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"complete graph needs n >= 2, got {n}")
    return from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def gen_hypercube(dim: int) -> Graph:
    if dim < 1:
        raise GraphError(f"hypercube needs dim >= 1, got {dim}")
    n = 1 << dim
    return from_edge_list(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)])


def _pair_stubs(n: int, d: int, rng: np.random.Generator) -> set[Edge] | None:
    # Pair all stubs at random, keep every pair that is neither a loop nor a
    # repeat, then re-pair only the leftover stubs. None means a dead end.
    edges: set[Edge] = set()
    stubs = np.repeat(np.arange(n), d)
    while stubs.size:
        rng.shuffle(stubs)
        leftover = []
        for a, b in stubs.reshape(-1, 2).tolist():
            e = canonical(a, b)
            if a != b and e not in edges:
                edges.add(e)
            else:
                leftover.extend((a, b))
        if not leftover:
            break
        left = sorted(set(leftover))
        if not any(
            canonical(a, b) not in edges for i, a in enumerate(left) for b in left[i + 1 :]
        ):
            return None
        stubs = np.array(leftover, dtype=np.int64)
    return edges


def gen_random_regular(n: int, d: int, seed=None, max_tries: int = 1000) -> Graph:
    """Random simple connected ``d``-regular graph on ``n`` vertices.

    Stubs are paired uniformly (configuration model); loops and repeated
    pairs are rejected and their stubs re-paired, and disconnected results
    are discarded. The output is a deterministic function of ``seed``.
    """
    if n * d % 2 or not 0 < d < n:
        raise InfeasibleDegree(f"no simple {d}-regular graph on {n} vertices")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        edges = _pair_stubs(n, d, rng)
        if edges is None:
            continue
        try:
            return from_edge_list(n, sorted(edges))
        except Disconnected:
            continue
    raise RetriesExhausted(f"no connected {d}-regular graph on {n} vertices in {max_tries} tries")


# spectral estimation


@dataclass(frozen=True)
class SpectralProfile:
    lambda_hat: float
    tol: float
    iterations: int
    converged: bool
    d: int

    @property
    def growth_rate(self) -> float:
        """``d / lambda_hat`` (infinite for ``lambda_hat == 0``)."""
        return math.inf if self.lambda_hat == 0 else self.d / self.lambda_hat


def default_max_iter(n: int) -> int:
    return max(100, math.ceil(10 * n * math.log(max(n, 2))))


def estimate_lambda(g: Graph, tol: float = 1e-8, max_iter: int | None = None, seed=0) -> SpectralProfile:
    """Second largest absolute adjacency eigenvalue by power iteration.

    Iterates ``x -> A x - (d/n) sum(x) 1``, which removes the trivial
    eigenvalue ``d`` of the all-ones vector, and tracks ``|A x| / |x|``.
    Stops once successive estimates differ by at most ``tol`` (relative to
    ``max(1, estimate)``); otherwise returns the last estimate with
    ``converged=False``.
    """
    if g.d is None:
        raise NotRegular("estimate_lambda needs a regular graph")
    n, d = g.n, g.d
    if max_iter is None:
        max_iter = default_max_iter(n)
    if n == 1:
        return SpectralProfile(0.0, tol, 0, True, d)
    adj = g.csr.astype(np.float64)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    mu_prev = math.inf
    mu = 0.0
    for it in range(1, max_iter + 1):
        y = adj @ x - (d / n) * x.sum()
        mu = float(np.linalg.norm(y))
        if mu == 0.0:
            return SpectralProfile(0.0, tol, it, True, d)
        x = y / mu
        if abs(mu - mu_prev) <= tol * max(1.0, mu):
            return SpectralProfile(min(mu, float(d)), tol, it, True, d)
        mu_prev = mu
    return SpectralProfile(min(mu, float(d)), tol, max_iter, False, d)


# audits


class MixingAudit(NamedTuple):
    e_count: int
    main_term: float
    slack: float

    @property
    def deviation(self) -> float:
        return abs(self.e_count - self.main_term)

    @property
    def holds(self) -> bool:
        return self.slack >= 0


def _mask(n: int, vertices) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    m[np.fromiter(vertices, dtype=np.int64)] = True
    return m


def mixing_discrepancy(g: Graph, lam: float, S, T) -> MixingAudit:
    """Audit the Expander Mixing Lemma bound for one pair of vertex sets.

    ``e_count`` counts ordered pairs ``(s, t)`` with ``s in S``, ``t in T``
    adjacent, so edges inside ``S & T`` are counted twice.
    """
    if g.d is None:
        raise NotRegular("mixing_discrepancy needs a regular graph")
    s_mask, t_mask = _mask(g.n, S), _mask(g.n, T)
    size_s, size_t = int(s_mask.sum()), int(t_mask.sum())
    if size_s and size_t:
        e_count = int(t_mask[g.neighbor_array[s_mask]].sum())
    else:
        e_count = 0
    main = size_s * size_t * g.d / g.n
    slack = lam * math.sqrt(size_s * size_t) - abs(e_count - main)
    return MixingAudit(e_count, main, slack)


def distances(g: Graph, sources=None) -> np.ndarray:
    """BFS hop distances from ``sources`` (all vertices by default)."""
    dist = shortest_path(g.csr, method="D", directed=False, unweighted=True, indices=sources)
    return dist


def diameter(g: Graph) -> int:
    dist = distances(g)
    if np.isinf(dist).any():
        raise Disconnected("diameter of a disconnected graph")
    return int(dist.max())
