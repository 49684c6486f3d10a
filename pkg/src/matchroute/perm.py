"""Permutations of ``0..n-1`` and their factorisation into two involutions."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import PermutationError


class Permutation:
    """Bijection on ``{0, ..., n-1}``; ``p[v]`` is the image of ``v``."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Iterable[int]):
        m = tuple(int(x) for x in mapping)
        if sorted(m) != list(range(len(m))):
            raise PermutationError(f"not a permutation of 0..{len(m) - 1}: {m[:16]}")
        self._map = m
        self._check()

    def _check(self):
        pass

    @classmethod
    def identity(cls, n: int):
        return cls(range(n))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator):
        return cls(rng.permutation(n).tolist())

    @property
    def map(self) -> tuple[int, ...]:
        return self._map

    def __len__(self):
        return len(self._map)

    def __getitem__(self, v):
        return self._map[v]

    def __call__(self, v: int) -> int:
        return self._map[v]

    def __iter__(self):
        return iter(self._map)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        return hash(self._map)

    def __repr__(self):
        return f"{type(self).__name__}({list(self._map)})"

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self._map))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._map)
        for v, image in enumerate(self._map):
            inv[image] = v
        return Permutation(inv)

    def fixed_points(self) -> list[int]:
        return [v for v, image in enumerate(self._map) if v == image]


class Involution(Permutation):
    """Permutation of order at most two."""

    __slots__ = ()

    def _check(self):
        m = self._map
        bad = next((v for v in range(len(m)) if m[m[v]] != v), None)
        if bad is not None:
            raise PermutationError(f"not an involution: {bad} -> {m[bad]} -> {m[m[bad]]}")

    def pairs(self) -> list[tuple[int, int]]:
        """The 2-cycles ``(v, p[v])`` with ``v < p[v]``, ascending."""
        return [(v, image) for v, image in enumerate(self._map) if v < image]


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``compose(p, q)[v] == p[q[v]]`` (apply ``q`` first)."""
    if len(p) != len(q):
        raise PermutationError(f"length mismatch: {len(p)} vs {len(q)}")
    return Permutation(p[q[v]] for v in range(len(q)))


def cycle_decomposition(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest element, sorted by it.

    Fixed points are returned as 1-cycles.
    """
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = p[v]
        cycles.append(tuple(cycle))
    return cycles


def decompose_into_involutions(p: Sequence[int]) -> tuple[Involution, Involution]:
    """Write ``p`` as ``tau o sigma`` with ``sigma``, ``tau`` involutions.

    On every cycle ``(c_0, ..., c_{m-1})`` of ``p``, ``sigma`` reflects
    ``c_i -> c_{-i}`` and ``tau`` reflects ``c_i -> c_{1-i}`` (indices mod
    ``m``); then ``tau(sigma(c_i)) = c_{i+1} = p(c_i)``.
    """
    n = len(p)
    sigma = [0] * n
    tau = [0] * n
    for cycle in cycle_decomposition(p):
        m = len(cycle)
        for i, c in enumerate(cycle):
            sigma[c] = cycle[-i % m]
            tau[c] = cycle[(1 - i) % m]
    return Involution(sigma), Involution(tau)
