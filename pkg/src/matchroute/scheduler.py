"""End-to-end routing: permutation -> two involutions -> batches -> schedule."""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import BatchFailed, PartitionFailed, ResamplesExhausted, RoutingFailed
from .graph import Graph, distances, estimate_lambda
from .partition import find_partition
from .paths import BuilderParams, SwitchablePathFamily, build_family, family_schedule
from .perm import Permutation, decompose_into_involutions
from .sim import Schedule, verify_achieves

# the spectral estimate only feeds floor(d / lambda_hat), so a short run suffices
ROUTE_LAMBDA_ITERS = 2000


def substream(seed: int, name: str, *extra: int) -> np.random.Generator:
    """Independent generator for the named purpose, derived from one seed."""
    return np.random.default_rng([int(seed), zlib.crc32(name.encode()), *extra])


@dataclass
class BatchRecord:
    involution: str
    side: int
    stage: str
    k: int | None
    size: int
    rounds: int


@dataclass
class RouteReport:
    schedule: Schedule
    rounds: int
    batches: dict[str, int]
    k: int
    ell: int
    epsilon: float
    growth: int
    frontier_target: int
    lambda_hat: float | None
    theoretical_bound: int | None
    verified: bool
    sigma_rounds: int = 0
    fallback_pairs: int = 0
    batch_log: list[BatchRecord] = field(default_factory=list)


def select_batch(pending: Sequence[tuple[int, int]], limit: int) -> list[int]:
    """Smaller endpoint of the first ``limit`` pairs, by ascending smaller endpoint."""
    ordered = sorted((min(p), max(p)) for p in pending)
    return [a for a, _ in ordered[:limit]]


def theoretical_round_bound(n: int, d: int, lam: float, epsilon: float = 1 / 72) -> int | None:
    """Round count guaranteed by the expander argument, or ``None`` outside its regime.

    Needs ``lam < d / 72`` and ``epsilon == 1/72``; then
    ``k = ceil(log_{d/lam}(epsilon * n))`` (at least 1) and the bound is
    ``2 * (2k + 1) * 2 * ceil(1 / epsilon)``, the leading 2 covering the two
    involutions.
    """
    if not lam < d / 72 or not math.isclose(epsilon, 1 / 72, rel_tol=1e-12):
        return None
    growth = math.inf if lam == 0 else d / lam
    target = epsilon * n
    k, reach = 1, growth
    while reach < target:
        k += 1
        reach *= growth
    return 2 * (2 * k + 1) * 2 * math.ceil(round(1 / epsilon, 9))


def _path_swap_schedule(g: Graph, u: int, v: int) -> Schedule:
    # Shortest u-v path e_1..e_m, rounds e_1..e_{m-1}, e_m, e_{m-1}..e_1:
    # swaps the pebbles on u and v and restores everything in between.
    dist = distances(g, [v])[0]
    path = [u]
    while path[-1] != v:
        here = path[-1]
        path.append(next(x for x in g.adjacency[here] if dist[x] == dist[here] - 1))
    edges = [(a, b) for a, b in zip(path, path[1:])]
    rounds = [[e] for e in edges[:-1]] + [[edges[-1]]] + [[e] for e in edges[-2::-1]]
    return Schedule(rounds)


def _route_side(g, partition, inv, pairs, params, rng, log, name, side):
    """Batch and route the pairs of one side; returns (schedule, residual pairs)."""
    out = Schedule([])
    k, limit = params.k, params.batch_limit
    ladder = [("base", k, limit), ("deeper", k + 1, limit), ("halved", k + 1, max(1, limit // 2))]
    pending = sorted(pairs)
    for stage, stage_k, stage_limit in ladder:
        stage_params = replace(params, k=stage_k, batch_limit=stage_limit)
        deferred = []
        while pending:
            W = select_batch(pending, stage_limit)
            chosen, pending = pending[: len(W)], pending[len(W) :]
            try:
                fam = build_family(g, partition, W, inv, stage_params, seed=rng)
            except BatchFailed:
                deferred.extend(chosen)
                continue
            out.extend(family_schedule(fam))
            log.append(BatchRecord(name, side, stage, stage_k, len(fam), fam.ell))
            skipped = set(fam.deferred)
            deferred.extend(p for p in chosen if p[0] in skipped)
        pending = sorted(deferred)
        if not pending:
            break
    return out, pending


def route(
    g: Graph,
    pi: Sequence[int],
    params: BuilderParams | None = None,
    beta: float = 1 / 3,
    seed: int = 0,
    lambda_hat: float | None = None,
    max_resamples: int | None = None,
    fallback: bool = False,
) -> RouteReport:
    """Build and verify a matching schedule achieving ``pi`` on ``g``.

    ``pi`` is split as ``tau o sigma``. For each involution (``sigma``
    first) the pairs that are already edges are swapped in a single round,
    a fresh partition is sampled, and the remaining pairs of each side are
    routed in batches of switchable path families. A batch vertex that
    cannot be routed moves through the retry ladder: fresh randomness, one
    extra layer, then half-size batches.

    With ``fallback=True`` pairs the ladder cannot place (or all pairs of an
    involution, when no partition exists) are swapped one at a time along a
    shortest path instead of raising.

    Raises
    ------
    PartitionFailed, RoutingFailed
    """
    if not isinstance(pi, Permutation):
        pi = Permutation(pi)
    if len(pi) != g.n:
        raise ValueError(f"permutation has length {len(pi)}, graph has {g.n} vertices")
    params = params or BuilderParams()
    if lambda_hat is None and params.growth is None:
        lambda_hat = estimate_lambda(
            g, max_iter=ROUTE_LAMBDA_ITERS, seed=substream(seed, "lambda")
        ).lambda_hat
    resolved = params.resolve(g.n, g.d, lambda_hat)

    schedule = Schedule([])
    log: list[BatchRecord] = []
    sigma, tau = decompose_into_involutions(pi)
    sigma_rounds = 0
    fallback_pairs = 0
    for index, (name, inv) in enumerate((("sigma", sigma), ("tau", tau))):
        pairs = inv.pairs()
        adjacent = [p for p in pairs if g.has_edge(*p)]
        rest = [p for p in pairs if not g.has_edge(*p)]
        if adjacent:
            schedule.extend(family_schedule(SwitchablePathFamily(adjacent, 0)))
            log.append(BatchRecord(name, 0, "adjacent", 0, len(adjacent), 1))
        residual = []
        if rest:
            try:
                partition = find_partition(
                    g, inv, beta, max_resamples, seed=substream(seed, "partition", index)
                )
            except ResamplesExhausted as exc:
                if not fallback:
                    raise PartitionFailed(f"{name}: {exc}") from exc
                partition = None
            if partition is None:
                residual = rest
            else:
                rng = substream(seed, "builder", index)
                for side in (1, 2):
                    side_pairs = [p for p in rest if partition.side[p[0]] == side]
                    part, left = _route_side(g, partition, inv, side_pairs, resolved, rng, log, name, side)
                    schedule.extend(part)
                    residual.extend(left)
        if residual:
            if not fallback:
                raise RoutingFailed(residual)
            for u, v in residual:
                part = _path_swap_schedule(g, u, v)
                schedule.extend(part)
                log.append(BatchRecord(name, 0, "fallback", None, 1, len(part)))
            fallback_pairs += len(residual)
        if index == 0:
            sigma_rounds = len(schedule)

    ok, rounds = verify_achieves(g, pi, schedule)
    if not ok:
        raise RoutingFailed([])
    return RouteReport(
        schedule=schedule,
        rounds=rounds,
        batches={name: sum(1 for b in log if b.involution == name) for name in ("sigma", "tau")},
        k=resolved.k,
        ell=2 * resolved.k + 1,
        epsilon=resolved.epsilon,
        growth=resolved.growth,
        frontier_target=resolved.frontier_target,
        lambda_hat=lambda_hat,
        theoretical_bound=None if lambda_hat is None else theoretical_round_bound(g.n, g.d, lambda_hat, resolved.epsilon),
        verified=True,
        sigma_rounds=sigma_rounds,
        fallback_pairs=fallback_pairs,
        batch_log=log,
    )
