"""Exact routing numbers for tiny graphs, lower bounds, and the scaling sweep."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ExceedsCap, MatchRouteError, ParseError, TooLarge
from .graph import Graph, _build, diameter, distances, estimate_lambda, gen_random_regular
from .paths import BuilderParams
from .perm import Permutation
from .scheduler import route, substream
from .sim import target_config

MAX_EXACT_N = 8


def fixture_graph(n: int, edges) -> Graph:
    """Simple graph that may be irregular or disconnected; for oracle tests only."""
    return _build(n, edges, regular=False, connected=False)


def all_matchings(g: Graph) -> list[tuple[tuple[int, int], ...]]:
    """Every non-empty matching of ``g`` (not only maximal ones)."""
    out = []
    edges = g.edges

    def extend(start, used, chosen):
        for i in range(start, len(edges)):
            u, v = edges[i]
            if u in used or v in used:
                continue
            chosen.append(edges[i])
            out.append(tuple(chosen))
            extend(i + 1, used | {u, v}, chosen)
            chosen.pop()

    extend(0, frozenset(), [])
    return out


def rt_exact(g: Graph, pi: Sequence[int], cap: int | None = None) -> int:
    """Fewest matching rounds taking the identity configuration to ``pi``.

    Breadth-first search over all ``n!`` pebble configurations.

    Raises
    ------
    TooLarge
        For ``n > 8``.
    ExceedsCap
        If no schedule of at most ``cap`` rounds (default ``3n``) exists.
    """
    n = g.n
    if n > MAX_EXACT_N:
        raise TooLarge(f"rt_exact handles n <= {MAX_EXACT_N}, got {n}")
    if cap is None:
        cap = 3 * n
    weights = n ** np.arange(n, dtype=np.int64)
    start = np.arange(n, dtype=np.int64)
    goal = int(target_config(pi) @ weights)
    if int(start @ weights) == goal:
        return 0
    moves = []
    for m in all_matchings(g):
        p = np.arange(n)
        for u, v in m:
            p[u], p[v] = v, u
        moves.append(p)
    seen = np.zeros(n**n, dtype=bool)
    seen[int(start @ weights)] = True
    frontier = start[None, :]
    for depth in range(1, cap + 1):
        if not moves:
            break
        nxt = np.concatenate([frontier[:, p] for p in moves])
        codes = nxt @ weights
        codes, first = np.unique(codes, return_index=True)
        fresh = ~seen[codes]
        if not fresh.any():
            break
        if goal in set(codes[fresh].tolist()):
            return depth
        seen[codes[fresh]] = True
        frontier = nxt[first[fresh]]
    raise ExceedsCap(f"permutation not reachable within {cap} rounds")


def rt_lower_bound(g: Graph, pi: Sequence[int]) -> int:
    """``max_v dist(v, pi[v])``: a pebble crosses at most one edge per round."""
    moved = [v for v in range(g.n) if pi[v] != v]
    if not moved:
        return 0
    dist = distances(g, moved)
    return int(max(dist[i, pi[v]] for i, v in enumerate(moved)))


# benchmark sweep

CSV_HEADER = ["n", "d", "seed", "lambda_hat", "rounds", "diameter", "log2n_ratio", "wall_ms", "verified"]


@dataclass
class BenchSpec:
    d: int
    ns: list[int]
    seeds: list[int]
    params: dict = field(default_factory=dict)
    beta: float = 1 / 3
    tol: float = 1e-8
    max_iter: int | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "BenchSpec":
        try:
            seeds = doc.get("seeds", 1)
            seeds = list(range(seeds)) if isinstance(seeds, int) else [int(s) for s in seeds]
            return cls(
                d=int(doc["d"]),
                ns=[int(n) for n in doc.get("n", [])],
                seeds=seeds,
                params=dict(doc.get("params", {})),
                beta=float(doc.get("beta", 1 / 3)),
                tol=float(doc.get("tol", 1e-8)),
                max_iter=doc.get("max_iter"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad bench spec: {exc}") from exc

    @classmethod
    def read(cls, path) -> "BenchSpec":
        try:
            doc = json.loads(Path(path).read_text())
        except ValueError as exc:
            raise ParseError(f"bench spec is not JSON: {exc}") from exc
        return cls.from_dict(doc)


@dataclass
class BenchRow:
    n: int
    d: int
    seed: int
    lambda_hat: float = math.nan
    rounds: int | None = None
    diameter: int | None = None
    log2_n_ratio: float = math.nan
    wall_time: float = 0.0
    verified: bool = False
    lower_bound: int | None = None
    error: str | None = None

    def csv_fields(self) -> list[str]:
        def num(x, fmt):
            return "" if x is None or (isinstance(x, float) and math.isnan(x)) else format(x, fmt)

        return [
            str(self.n),
            str(self.d),
            str(self.seed),
            num(self.lambda_hat, ".6f"),
            num(self.rounds, "d"),
            num(self.diameter, "d"),
            num(self.log2_n_ratio, ".6f"),
            f"{self.wall_time * 1000:.3f}",
            "true" if self.verified else "false",
        ]


def bench_row(spec: BenchSpec, n: int, seed: int) -> BenchRow:
    """Generate, estimate, route and verify one ``(n, seed)`` instance."""
    row = BenchRow(n=n, d=spec.d, seed=seed)
    t0 = time.perf_counter()
    try:
        g = gen_random_regular(n, spec.d, seed=substream(seed, "graph"))
        prof = estimate_lambda(g, tol=spec.tol, max_iter=spec.max_iter, seed=substream(seed, "lambda"))
        row.lambda_hat = prof.lambda_hat
        pi = Permutation.random(n, substream(seed, "perm"))
        row.diameter = diameter(g)
        row.lower_bound = rt_lower_bound(g, pi)
        report = route(
            g, pi, BuilderParams(**spec.params), beta=spec.beta, seed=seed, lambda_hat=prof.lambda_hat
        )
        row.rounds = report.rounds
        row.log2_n_ratio = report.rounds / math.log2(n)
        row.verified = report.verified
    except MatchRouteError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    row.wall_time = time.perf_counter() - t0
    return row


def _row_job(args):
    return bench_row(*args)


def bench_sweep(spec: BenchSpec, jobs: int = 1) -> list[BenchRow]:
    """One row per ``(n, seed)``, sorted by ``(n, seed)``; failures stay in their row."""
    tasks = [(spec, n, s) for n in sorted(spec.ns) for s in sorted(spec.seeds)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row_job, tasks))
    return [bench_row(*t) for t in tasks]


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(r.csv_fields())
    return buf.getvalue()
