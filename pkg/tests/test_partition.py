import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchroute.errors import ParseError, ResamplesExhausted
from matchroute.graph import gen_complete, gen_cycle, gen_random_regular
from matchroute.partition import Partition, check_partition, degree_threshold, find_partition
from matchroute.perm import Permutation, decompose_into_involutions

C4 = gen_cycle(4)


def brute_ok(g, pi, side, thr):
    # independent re-count straight from the edge list
    for v in range(g.n):
        if side[v] != side[pi[v]]:
            return False
    own = {v: [0, 0] for v in range(g.n)}
    for u, v in g.edges:
        own[u][side[v] - 1] += 1
        own[v][side[u] - 1] += 1
    return all(min(c) >= thr for c in own.values())


def test_degree_threshold():
    assert degree_threshold(7, 1 / 3) == 3
    assert degree_threshold(33, 1 / 3) == 11
    assert degree_threshold(32, 1 / 3) == 11
    assert degree_threshold(2, 0.25) == 1


def test_c4_exhaustive_colourings():
    ident = list(range(4))
    valid = []
    for bits in itertools.product((1, 2), repeat=4):
        p = Partition(np.array(bits, dtype=np.int8))
        rep = check_partition(C4, ident, p, beta=0.25)
        assert rep.ok == brute_ok(C4, ident, bits, 1)
        if rep.ok:
            valid.append(bits)
    # each vertex needs one neighbour per side: only the two "adjacent pairs" splits of each kind
    assert sorted(valid) == [(1, 1, 2, 2), (1, 2, 2, 1), (2, 1, 1, 2), (2, 2, 1, 1)]
    found = find_partition(C4, ident, beta=0.25, seed=0)
    assert tuple(found.side.tolist()) in valid


def test_check_partition_reports():
    ident = list(range(4))
    alt = Partition(np.array([1, 2, 1, 2], dtype=np.int8))
    rep = check_partition(C4, ident, alt, beta=0.25)
    assert not rep.ok and rep.threshold == 1
    # alternating colouring: no vertex has a neighbour on its own side
    assert [v for v, _, _ in rep.degree_violations] == [0, 1, 2, 3]
    assert all(min(a, b) == 0 for _, a, b in rep.degree_violations)
    split = Partition(np.array([1, 1, 2, 2], dtype=np.int8))
    rep = check_partition(C4, [2, 1, 0, 3], split, beta=0.25)
    assert rep.pair_violations == [(0, 2)]


def test_k8_balanced_split():
    g = gen_complete(8)
    ident = list(range(8))
    p = Partition(np.array([1, 1, 1, 1, 2, 2, 2, 2], dtype=np.int8))
    assert check_partition(g, ident, p).ok
    found = find_partition(g, ident, seed=3)
    assert check_partition(g, ident, found).ok


def test_c3_exhausts_without_hanging():
    # d=2, threshold 1: every vertex needs a neighbour on each side, and a
    # pair of adjacent vertices sharing a side leaves the third stranded
    g = gen_cycle(3)
    with pytest.raises(ResamplesExhausted) as info:
        find_partition(g, [1, 0, 2], seed=0, max_resamples=50)
    assert info.value.resamples == 50


def test_partition_line_round_trip():
    p = Partition.from_line("1122\n")
    assert p.to_line() == "1122"
    assert p.members(2).tolist() == [2, 3]
    for bad in ["", "1 2", "1232"]:
        with pytest.raises(ParseError):
            Partition.from_line(bad)


def test_find_partition_is_seeded():
    g = gen_random_regular(64, 16, seed=1)
    pi = Permutation.random(64, np.random.default_rng(0))
    sigma, _ = decompose_into_involutions(pi)
    a = find_partition(g, sigma, seed=11)
    b = find_partition(g, sigma, seed=11)
    assert a.to_line() == b.to_line()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(64, 16), (128, 16), (64, 32)]))
def test_returned_partitions_always_check(seed, shape):
    n, d = shape
    g = gen_random_regular(n, d, seed=seed % 97)
    pi = Permutation.random(n, np.random.default_rng(seed))
    for inv in decompose_into_involutions(pi):
        p = find_partition(g, inv, seed=seed)
        assert check_partition(g, inv, p).ok
        assert brute_ok(g, list(inv), p.side.tolist(), degree_threshold(d, 1 / 3))
