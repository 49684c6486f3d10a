"""Matching-switchable path families and the layered frontier builder.

A family of paths with common length ``2k + 1`` and distinct endpoints is
*k-matching-switchable* when, for every ``z`` in ``1..k``, the ``z``-th and
``(2k + 2 - z)``-th edges of all paths together form a matching. Swapping
across those slices in the palindromic order ``E_1 .. E_k, middle,
E_k .. E_1`` exchanges the two endpoint pebbles of every path and leaves
every other pebble where it started.

Paths from ``w`` to ``pi[w]`` are found by growing two disjoint frontiers
through ``k`` bipartite layers ``G[A_z, B_z]`` whose sides alternate
between the two partition classes, joining the frontiers by one edge and
walking the parent pointers back. Only the edges of the final path are
retained in each layer; all other tentatively selected edges are released.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import BatchFailed, FrontierStuck, InvalidFamily, NoCrossingEdge
from .graph import Graph, canonical
from .partition import Partition
from .sim import Matching, Schedule, make_matching


def _ceil(x: float) -> int:
    return math.ceil(round(x, 9))


def _floor(x: float) -> int:
    return math.floor(round(x, 9))


def layers_needed(target: int, growth: int) -> int:
    """Smallest ``k >= 1`` with ``growth ** k >= target``."""
    if growth < 2:
        raise ValueError(f"growth must be at least 2, got {growth}")
    k, reach = 1, growth
    while reach < target:
        k += 1
        reach *= growth
    return k


@dataclass(frozen=True)
class BuilderParams:
    """Knobs of the path builder; ``None`` fields are derived by :meth:`resolve`.

    Attributes
    ----------
    epsilon
        Batch fraction; a batch holds at most ``ceil(epsilon * n)`` pairs.
    growth
        Per-parent frontier multiplier, default ``max(2, floor(d / lambda_hat))``.
    k
        Number of layers, default the fewest for which ``growth ** k``
        reaches ``frontier_target``.
    frontier_target
        Final frontier size. Defaults to the larger of ``floor(epsilon * n)``
        and ``ceil(sqrt(connect_margin * n / d))``; the latter makes the
        expected number of edges between the two final frontiers about
        ``connect_margin``.
    capacity
        Cap on retained edges per layer, default ``n / 24``.
    retry_limit
        Extra attempts per path (each with fresh randomness) before the
        vertex is deferred.
    randomize
        Scan neighbours in random order on the first attempt. Retries are
        always randomised.
    """

    epsilon: float = 1 / 72
    growth: int | None = None
    k: int | None = None
    frontier_target: int | None = None
    capacity: float | None = None
    batch_limit: int | None = None
    connect_margin: float = 8.0
    retry_limit: int = 3
    randomize: bool = True

    def resolve(self, n: int, d: int, lambda_hat: float | None = None) -> "BuilderParams":
        growth = self.growth
        if growth is None:
            growth = 2 if not lambda_hat else max(2, _floor(d / lambda_hat))
        target = self.frontier_target
        if target is None:
            target = max(1, _floor(self.epsilon * n), _ceil(math.sqrt(self.connect_margin * n / d)))
        k = self.k if self.k is not None else layers_needed(target, growth)
        capacity = self.capacity if self.capacity is not None else n / 24
        batch = self.batch_limit if self.batch_limit is not None else max(1, _ceil(self.epsilon * n))
        if growth < 2 or k < 1 or target < 1 or batch < 1:
            raise ValueError(f"invalid builder parameters: growth={growth} k={k} target={target} batch={batch}")
        return replace(
            self, growth=growth, k=k, frontier_target=target, capacity=capacity, batch_limit=batch
        )

    def frontier_sizes(self) -> list[int]:
        """``[s_0, s_1, ..., s_k]`` with ``s_0 = 1`` and ``s_z = min(target, g * s_{z-1})``."""
        sizes = [1]
        for _ in range(self.k):
            sizes.append(min(self.frontier_target, sizes[-1] * self.growth))
        return sizes


def plan_layers(start_side: int, k: int) -> list[tuple[int, int]]:
    """``(A_z, B_z)`` side ids for ``z = 1..k``; ``A_1`` is ``start_side``."""
    if start_side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {start_side}")
    other = 3 - start_side
    return [(start_side, other) if z % 2 else (other, start_side) for z in range(1, k + 1)]


class LayerState:
    """Edges retained in each layer by the paths committed so far.

    ``edges[z]`` holds ``(a, b)`` pairs with ``a`` in ``A_z``; ``used_b[z]``
    flags the ``B_z`` vertices already covered by a retained edge.
    """

    def __init__(self, n: int, k: int, capacity: float = math.inf):
        self.k = k
        self.capacity = capacity
        self.edges: list[list[tuple[int, int]]] = [[] for _ in range(k + 1)]
        self.used_b = np.zeros((k + 1, n), dtype=bool)

    def room_for_path(self) -> bool:
        # an empty state always admits one path, so tiny graphs (n < 48) still route
        if not self.edges[1:] or not any(self.edges[1:]):
            return True
        return all(len(self.edges[z]) + 2 <= self.capacity for z in range(1, self.k + 1))

    def commit(self, path: Sequence[int]):
        ell = 2 * self.k + 1
        if len(path) != ell + 1:
            raise ValueError(f"path has {len(path) - 1} edges, expected {ell}")
        for z in range(1, self.k + 1):
            fwd = (path[z - 1], path[z])
            back = (path[ell + 1 - z], path[ell - z])
            for _, b in (fwd, back):
                if self.used_b[z, b]:
                    raise AssertionError(f"B-side vertex {b} reused in layer {z}")
                self.used_b[z, b] = True
            self.edges[z].extend((fwd, back))


@dataclass
class FrontierPair:
    """Frontiers ``S_z``/``S'_z`` and the parent of every frontier vertex.

    ``parent[z][b]`` is the ``A_z`` vertex whose edge brought ``b`` into
    ``S_z``.
    """

    fronts: list[list[int]]
    fronts2: list[list[int]]
    parent: list[dict[int, int]]
    parent2: list[dict[int, int]]

    @property
    def k(self) -> int:
        return len(self.fronts) - 1


def grow_frontiers(
    g: Graph,
    partition: Partition,
    state: LayerState,
    w: int,
    w2: int,
    params: BuilderParams,
    rng: np.random.Generator | None = None,
) -> FrontierPair:
    """Grow both frontiers layer by layer against the retained edges.

    In layer ``z`` each frontier takes ``s_z`` new ``B_z`` vertices, none of
    them covered by a retained edge of layer ``z`` or already taken by
    either frontier in this layer, with at most ``growth`` children per
    parent. Parents are processed in ascending id, ``S`` before ``S'``.
    Neighbours are scanned in ascending id unless ``rng`` is given, in which
    case they are scanned in random order.
    """
    if w == w2:
        raise ValueError("frontier roots must differ")
    side = partition.side
    if side[w] != side[w2]:
        raise ValueError(f"roots {w} and {w2} lie on different sides")
    k = params.k
    layers = plan_layers(int(side[w]), k)
    sizes = params.frontier_sizes()
    fronts, fronts2 = [[w]], [[w2]]
    parent: list[dict[int, int]] = [{}]
    parent2: list[dict[int, int]] = [{}]
    for z in range(1, k + 1):
        b_side = layers[z - 1][1]
        blocked = state.used_b[z]
        taken: set[int] = set()
        for front, parents in ((fronts, parent), (fronts2, parent2)):
            want = sizes[z]
            new: list[int] = []
            par: dict[int, int] = {}
            for a in sorted(front[z - 1]):
                nbrs = g.adjacency[a]
                if rng is not None:
                    nbrs = [nbrs[i] for i in rng.permutation(len(nbrs))]
                children = 0
                for b in nbrs:
                    if side[b] != b_side or blocked[b] or b in taken:
                        continue
                    taken.add(b)
                    par[b] = a
                    new.append(b)
                    children += 1
                    if children == params.growth or len(new) == want:
                        break
                if len(new) == want:
                    break
            if len(new) < want:
                raise FrontierStuck(z, len(new), want)
            front.append(new)
            parents.append(par)
        assert not set(fronts[z]) & set(fronts2[z])
    return FrontierPair(fronts, fronts2, parent, parent2)


def connect_frontiers(g: Graph, f: FrontierPair) -> tuple[int, int]:
    """First edge ``(v, v2)`` with ``v`` in ``S_k`` and ``v2`` in ``S'_k``."""
    other = set(f.fronts2[-1])
    for v in sorted(f.fronts[-1]):
        for u in g.adjacency[v]:
            if u in other:
                return v, u
    raise NoCrossingEdge(f"no edge between final frontiers of sizes {len(f.fronts[-1])}, {len(other)}")


def extract_path(f: FrontierPair, e: tuple[int, int]) -> tuple[int, ...]:
    """Walk parent edges back from both ends of ``e``.

    Returns ``w, v_1, ..., v_k, v'_k, ..., v'_1, w'``.
    """
    v, v2 = e
    left, right = [v], [v2]
    for z in range(f.k, 0, -1):
        v = f.parent[z][v]
        v2 = f.parent2[z][v2]
        left.append(v)
        right.append(v2)
    return tuple(left[::-1] + right)


@dataclass
class SwitchablePathFamily:
    """Paths of common length ``2k + 1``; ``deferred`` lists batch vertices left unrouted."""

    paths: list[tuple[int, ...]]
    k: int
    deferred: list[int] = field(default_factory=list)

    @property
    def ell(self) -> int:
        return 2 * self.k + 1

    def __len__(self):
        return len(self.paths)

    def slice(self, z: int) -> Matching:
        """``E_z``: the ``z``-th and ``(ell + 1 - z)``-th edge of every path."""
        ell = self.ell
        out = []
        for p in self.paths:
            out.append((p[z - 1], p[z]))
            out.append((p[ell - z], p[ell + 1 - z]))
        return make_matching(out)

    def middle(self) -> Matching:
        k = self.k
        return make_matching((p[k], p[k + 1]) for p in self.paths)

    def endpoints(self) -> list[tuple[int, int]]:
        return [(p[0], p[-1]) for p in self.paths]


@dataclass
class FamilyReport:
    ok: bool
    violations: list[tuple] = field(default_factory=list)


def _repeated_vertex(m: Matching) -> int | None:
    seen = set()
    for e in m:
        for x in e:
            if x in seen:
                return x
            seen.add(x)
    return None


def _structure_violations(fam: SwitchablePathFamily) -> list[tuple]:
    out = []
    for i, p in enumerate(fam.paths):
        if len(p) - 1 != fam.ell:
            out.append(("length", i, len(p) - 1))
    if out:
        return out
    ends = [x for p in fam.paths for x in (p[0], p[-1])]
    if len(set(ends)) != len(ends):
        dup = next(x for x in ends if ends.count(x) > 1)
        out.append(("endpoint", dup))
    for z in range(1, fam.k + 1):
        x = _repeated_vertex(fam.slice(z))
        if x is not None:
            out.append(("slice", z, x))
    x = _repeated_vertex(fam.middle())
    if x is not None:
        out.append(("middle", x))
    return out


def verify_switchable(g: Graph, fam: SwitchablePathFamily) -> FamilyReport:
    """Audit lengths, endpoint distinctness, slice matchings and adjacency."""
    violations = _structure_violations(fam)
    for i, p in enumerate(fam.paths):
        for u, v in zip(p, p[1:]):
            if not g.has_edge(u, v):
                violations.append(("adjacency", i, canonical(u, v)))
    return FamilyReport(not violations, violations)


def family_schedule(fam: SwitchablePathFamily) -> Schedule:
    """Rounds ``E_1, ..., E_k, middle, E_k, ..., E_1``."""
    if not fam.paths:
        return Schedule([])
    bad = _structure_violations(fam)
    if bad:
        raise InvalidFamily(f"family is not {fam.k}-matching-switchable: {bad[:3]}")
    slices = [fam.slice(z) for z in range(1, fam.k + 1)]
    return Schedule(slices + [fam.middle()] + slices[::-1])


def build_family(
    g: Graph,
    partition: Partition,
    W: Sequence[int],
    pi: Sequence[int],
    params: BuilderParams,
    seed=None,
) -> SwitchablePathFamily:
    """Route every ``w`` in ``W`` to ``pi[w]`` with one switchable family.

    ``params`` must be resolved. Vertices whose path cannot be found within
    ``params.retry_limit`` extra attempts (or that would overflow the layer
    capacity) are skipped and listed in ``deferred``.

    Raises
    ------
    BatchFailed
        If ``W`` is non-empty and no vertex could be routed.
    """
    W = [int(w) for w in W]
    if not W:
        return SwitchablePathFamily([], params.k)
    ends = W + [pi[w] for w in W]
    if len(set(ends)) != len(ends) or any(pi[w] == w for w in W):
        raise ValueError("batch endpoints must be distinct and non-fixed")
    if len({int(partition.side[x]) for x in ends}) != 1:
        raise ValueError("batch must lie on one side of the partition")
    rng = np.random.default_rng(seed)
    state = LayerState(g.n, params.k, params.capacity)
    paths, deferred = [], []
    for w in W:
        path = None
        if state.room_for_path():
            for attempt in range(params.retry_limit + 1):
                scan_rng = rng if (params.randomize or attempt) else None
                try:
                    f = grow_frontiers(g, partition, state, w, pi[w], params, scan_rng)
                    path = extract_path(f, connect_frontiers(g, f))
                    break
                except (FrontierStuck, NoCrossingEdge):
                    continue
        if path is None:
            deferred.append(w)
            continue
        state.commit(path)
        paths.append(path)
    if not paths:
        raise BatchFailed(W)
    return SwitchablePathFamily(paths, params.k, deferred)


@dataclass
class NonblockingReport:
    ok: bool
    checked: int
    witness: tuple[int, ...] | None = None
    neighbours: int | None = None
    needed: int | None = None


def nonblocking_hypothesis_check(
    g: Graph,
    A: Sequence[int],
    B: Sequence[int],
    dd: int,
    a: int,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed=None,
) -> NonblockingReport:
    """Check that every ``X`` in ``A`` with ``1 <= |X| <= 2a`` has at least
    ``2 * dd * |X|`` neighbours in ``B``.

    ``mode="exhaustive"`` enumerates all such ``X`` (needs ``|A| <= 20``);
    ``mode="sampled"`` draws ``samples`` random subsets.
    """
    A = sorted(int(x) for x in A)
    b_index = {int(b): i for i, b in enumerate(sorted(B))}
    masks = {}
    for x in A:
        m = 0
        for y in g.adjacency[x]:
            if y in b_index:
                m |= 1 << b_index[y]
        masks[x] = m
    top = min(2 * a, len(A))

    def subsets():
        if mode == "exhaustive":
            if len(A) > 20:
                raise ValueError("exhaustive mode needs |A| <= 20")
            for size in range(1, top + 1):
                yield from itertools.combinations(A, size)
        elif mode == "sampled":
            rng = np.random.default_rng(seed)
            for _ in range(samples if top >= 1 else 0):
                size = int(rng.integers(1, top + 1))
                yield tuple(sorted(rng.choice(A, size=size, replace=False).tolist()))
        else:
            raise ValueError(f"unknown mode {mode!r}")

    checked = 0
    for X in subsets():
        checked += 1
        union = 0
        for x in X:
            union |= masks[x]
        count = bin(union).count("1")
        if count < 2 * dd * len(X):
            return NonblockingReport(False, checked, X, count, 2 * dd * len(X))
    return NonblockingReport(True, checked)
