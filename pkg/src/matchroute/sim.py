"""Pebble configurations, matchings, schedules and the round simulator.

Convention used throughout the package: a schedule *achieves* ``pi`` when,
started from the identity configuration (pebble ``v`` on vertex ``v``), it
leaves pebble ``v`` on vertex ``pi[v]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import EdgeNotInGraph, MatchingError, VertexReused
from .graph import Edge, Graph, canonical

Matching = tuple[Edge, ...]


def make_matching(edges: Iterable[Sequence[int]]) -> Matching:
    """Canonicalise and sort an edge collection (no validation)."""
    return tuple(sorted(canonical(int(u), int(v)) for u, v in edges))


@dataclass
class Schedule:
    """Ordered list of matchings, one per round."""

    rounds: list[Matching] = field(default_factory=list)

    def __post_init__(self):
        self.rounds = [make_matching(m) for m in self.rounds]

    def __len__(self):
        return len(self.rounds)

    def __iter__(self):
        return iter(self.rounds)

    def __add__(self, other: "Schedule") -> "Schedule":
        return Schedule(self.rounds + other.rounds)

    def extend(self, other: "Schedule"):
        self.rounds.extend(other.rounds)

    def reversed(self) -> "Schedule":
        return Schedule(self.rounds[::-1])


def identity_config(n: int) -> np.ndarray:
    """``at[v]`` is the label of the pebble on vertex ``v``."""
    return np.arange(n, dtype=np.int64)


def validate_matching(g: Graph, m: Iterable[Sequence[int]], round_index=None) -> None:
    """Raise unless every edge is in ``g`` and no vertex is used twice."""
    used = set()
    for u, v in m:
        e = canonical(int(u), int(v))
        if e not in g.edge_set:
            raise EdgeNotInGraph(e, round_index)
        for x in e:
            if x in used:
                raise VertexReused(x, round_index)
            used.add(x)


def apply_matching(at: np.ndarray, m: Matching) -> np.ndarray:
    """Swap the pebbles across every edge of ``m``; returns a new array."""
    out = np.array(at, copy=True)
    if m:
        e = np.asarray(m, dtype=np.int64)
        out[e[:, 0]], out[e[:, 1]] = at[e[:, 1]], at[e[:, 0]]
    return out


def _is_bijection(at: np.ndarray) -> bool:
    return np.array_equal(np.sort(at), np.arange(len(at)))


def run_schedule(g: Graph, start, s: Schedule, check: bool = False) -> np.ndarray:
    """Validate and apply every round of ``s`` in order.

    With ``check=True`` the configuration is also asserted to remain a
    bijection after each round.
    """
    at = np.asarray(start, dtype=np.int64)
    for i, m in enumerate(s.rounds):
        try:
            validate_matching(g, m, round_index=i)
        except MatchingError as exc:
            exc.round_index = i
            raise
        at = apply_matching(at, m)
        if check and not _is_bijection(at):
            raise AssertionError(f"configuration stopped being a bijection after round {i}")
    return at


def target_config(pi: Sequence[int]) -> np.ndarray:
    """Configuration with pebble ``v`` sitting on vertex ``pi[v]``."""
    at = np.empty(len(pi), dtype=np.int64)
    at[np.asarray(list(pi), dtype=np.int64)] = np.arange(len(pi))
    return at


def verify_achieves(g: Graph, pi: Sequence[int], s: Schedule) -> tuple[bool, int]:
    final = run_schedule(g, identity_config(g.n), s)
    return bool(np.array_equal(final, target_config(pi))), len(s)
