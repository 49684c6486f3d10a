"""Two-colouring of the vertices that keeps involution pairs together.

A valid partition puts ``v`` and ``pi[v]`` on the same side and gives every
vertex at least ``ceil(beta * d)`` neighbours on *each* side. One fair coin
is tossed per cycle of ``pi``; violations are then repaired locally by
moving cycles around the first violating vertex, a focused variant of
resampling (a plain re-toss of the whole neighbourhood stalls at
``d <= 32``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ParseError, ResamplesExhausted
from .graph import Graph
from .perm import cycle_decomposition


@dataclass(frozen=True)
class Partition:
    """``side[v]`` is 1 or 2."""

    side: np.ndarray

    def members(self, which: int) -> np.ndarray:
        return np.flatnonzero(self.side == which)

    def to_line(self) -> str:
        return "".join(str(int(s)) for s in self.side)

    @classmethod
    def from_line(cls, line: str) -> "Partition":
        text = line.rstrip("\n")
        if not text or set(text) - {"1", "2"}:
            raise ParseError("partition line must be a non-empty string of '1'/'2'")
        return cls(np.array([int(c) for c in text], dtype=np.int8))


@dataclass
class PartitionReport:
    ok: bool
    threshold: int
    pair_violations: list[tuple[int, int]] = field(default_factory=list)
    degree_violations: list[tuple[int, int, int]] = field(default_factory=list)
    """``(v, neighbours on side 1, neighbours on side 2)`` for each failing vertex."""


def degree_threshold(d: int, beta: float) -> int:
    # rounding guards against 1/3 * 33 == 11.000000000000002
    return math.ceil(round(beta * d, 9))


def _side1_counts(g: Graph, side: np.ndarray) -> np.ndarray:
    return (side[g.neighbor_array] == 1).sum(axis=1)


def check_partition(g: Graph, pi: Sequence[int], p: Partition, beta: float = 1 / 3) -> PartitionReport:
    side = np.asarray(p.side)
    thr = degree_threshold(g.d, beta)
    pairs = [(v, pi[v]) for v in range(g.n) if v < pi[v] and side[v] != side[pi[v]]]
    c1 = _side1_counts(g, side)
    c2 = g.d - c1
    bad = np.flatnonzero((c1 < thr) | (c2 < thr))
    degree = [(int(v), int(c1[v]), int(c2[v])) for v in bad]
    bad_values = set(np.unique(side).tolist()) - {1, 2}
    ok = not pairs and not degree and not bad_values and len(side) == g.n
    return PartitionReport(ok, thr, pairs, degree)


def find_partition(
    g: Graph,
    pi: Sequence[int],
    beta: float = 1 / 3,
    max_resamples: int | None = None,
    seed=None,
    noise: float = 0.3,
) -> Partition:
    """Sample a partition satisfying pair preservation and the degree rule.

    Every ``pi``-cycle gets one fair coin, so pairs always share a side.
    While some vertex ``v`` (lowest id first) has a deficit of ``k``
    neighbours on one side, ``k`` of the cycles holding its neighbours on
    the other side are moved across. With probability ``noise`` those
    cycles are drawn uniformly at random; otherwise the ones whose move
    creates the fewest new violations are taken (random tie-break).

    Raises
    ------
    ResamplesExhausted
        After ``max_resamples`` (default ``100 * n``) repair steps.
    """
    if not 0 < beta < 0.5:
        raise ValueError(f"beta must lie in (0, 1/2), got {beta}")
    n, d = g.n, g.d
    if max_resamples is None:
        max_resamples = 100 * n
    rng = np.random.default_rng(seed)
    thr = degree_threshold(d, beta)
    nbr = g.neighbor_array

    cycles = cycle_decomposition(pi)
    cycle_of = np.empty(n, dtype=np.int64)
    for i, cyc in enumerate(cycles):
        cycle_of[list(cyc)] = i
    # neighbours of each cycle's vertices, one row per cycle (cycles have length <= 2)
    first = np.array([c[0] for c in cycles], dtype=np.int64)
    second = np.array([c[-1] for c in cycles], dtype=np.int64)
    two = first != second

    coins = rng.integers(1, 3, size=len(cycles)).astype(np.int8)
    side = coins[cycle_of]
    c1 = _side1_counts(g, side)

    def violates(counts):
        return (counts < thr) | (d - counts < thr)

    def move(chosen, to, delta):
        coins[chosen] = to
        members = np.concatenate([first[chosen], second[chosen][two[chosen]]])
        np.add.at(c1, nbr[members].ravel(), delta)

    for step in range(max_resamples + 1):
        viol = np.flatnonzero(violates(c1))
        if viol.size == 0:
            return Partition(coins[cycle_of].copy())
        if step == max_resamples:
            break
        v = viol[0]
        short = 1 if c1[v] < thr else 2
        delta = 1 if short == 1 else -1
        deficit = thr - (c1[v] if short == 1 else d - c1[v])
        around = nbr[v][coins[cycle_of[nbr[v]]] != short]
        cands = np.unique(cycle_of[around])
        if rng.random() < noise:
            chosen = rng.choice(cands, size=min(deficit, cands.size), replace=False)
        else:
            # violations created minus violations cured, per candidate cycle
            rows = np.concatenate([nbr[first[cands]], np.where(two[cands, None], nbr[second[cands]], -1)], axis=1)
            owner = np.repeat(np.arange(cands.size), rows.shape[1])
            flat = rows.ravel()
            keep = flat >= 0
            keys, counts = np.unique(owner[keep] * n + flat[keep], return_counts=True)
            who, x = keys // n, keys % n
            change = violates(c1[x] + delta * counts).astype(int) - violates(c1[x])
            score = np.bincount(who, weights=change, minlength=cands.size)
            score = score + 0.5 * rng.random(cands.size)
            chosen = cands[np.argsort(score)[:deficit]]
        move(chosen, short, delta)
    raise ResamplesExhausted(max_resamples, int(viol.size))
